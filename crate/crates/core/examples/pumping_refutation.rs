//! Refute "L(G) ⊆ {a^n b^n c^2n}" for G generating a^m b^m c^t by pumping.
use langlab::corpus::{grammar_ambm_ct, CorpusLanguage};
use langlab::grammars::to_cnf;
use langlab::refuter::{refute_subset, Refutation};

fn main() -> langlab::Result<()> {
    let g = grammar_ambm_ct();
    let cnf = to_cnf(&g);
    let p = cnf.pumping_constant() as usize;
    match refute_subset(&g, &CorpusLanguage::L2DoublePrime, p)? {
        Refutation::Refuted(w) => {
            let d = &w.decomposition;
            println!("z has length {} (p = {})", w.z.len(), w.pumping_constant);
            println!("|u| = {}, v = {}, w = {}, x = {}, |y| = {}", d.u.len(), d.v, d.w, d.x, d.y.len());
            println!("pumping with i = {} leaves the predicate: length {}", w.violating.0, w.violating.1.len());
            println!("certificate replays: {}", w.replay(&cnf, &CorpusLanguage::L2DoublePrime));
        }
        Refutation::Inconclusive { examined } => println!("inconclusive after {examined} words"),
    }
    Ok(())
}

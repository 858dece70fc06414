//! Parse a grammar file, convert it to Chomsky normal form and decide
//! membership with CYK.
use langlab::grammars::{cyk_member, cyk_parse, enumerate_language, to_cnf, Cfg, SymbolTable};
use langlab::corpus::symbolic;

const GRAMMAR: &str = "
# a^m b^m c^t
S -> E K
E -> 'a' E 'b' | 'a' 'b'
K -> 'c' K | 'c'
";

fn main() -> langlab::Result<()> {
    let g = Cfg::parse_text(GRAMMAR, &SymbolTable::new())?;
    let cnf = to_cnf(&g);
    println!("CNF with {} nonterminals, pumping constant {}", cnf.nonterminal_count(), cnf.pumping_constant());
    println!("{}", cnf.to_cfg().to_text());

    for text in ["a,b,c", "a,a,b,b,c", "a,b,b,c", "a,a,b,c"] {
        let w = symbolic(text);
        println!("{text:>10}: {}", cyk_member(&cnf, &w));
    }

    let z = symbolic("a,a,b,b,c");
    if let Some(tree) = cyk_parse(&cnf, &z) {
        println!("parse tree of {z} has height {}", tree.height());
    }

    let words = enumerate_language(&g, 6);
    println!("{} words of length ≤ 6", words.len());
    Ok(())
}

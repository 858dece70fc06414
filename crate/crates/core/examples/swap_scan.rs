//! Swap witnesses: plenty for even palindromes, none for nested ones.
use langlab::corpus::{grammar_even_palindromes, CorpusLanguage, GrammarLanguage};
use langlab::oracle::Memoized;
use langlab::swaplab::{build_slice, swap_scan};

fn main() -> langlab::Result<()> {
    let pal = GrammarLanguage::new("even-pal", grammar_even_palindromes());
    let slice = build_slice(&pal, 4, None, false)?;
    let witnesses = swap_scan(&pal, &slice, 1..=4, None, false)?;
    println!("even palindromes, n = 4: {} witnesses", witnesses.len());
    for w in witnesses.iter().filter(|w| w.i == 1 && w.j == 2).take(3) {
        println!("  {} / {} at i = {}, j = {} -> {} / {}", w.x, w.y, w.i, w.j, w.swapped_x, w.swapped_y);
    }

    let l2 = Memoized::new(CorpusLanguage::L2);
    for n in [8, 16, 24] {
        let slice = build_slice(&CorpusLanguage::L2, n, None, false)?;
        let found = swap_scan(&l2, &slice, 1..=n / 4, None, false)?;
        println!("L2, n = {n:>2}: {} members, {} witnesses", slice.len(), found.len());
    }
    Ok(())
}

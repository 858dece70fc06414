//! The nested palindromes are the intersection of two context-free
//! languages: compare both sides length by length.
use langlab::corpus::{intersection_check, l2_members};

fn main() -> langlab::Result<()> {
    let report = intersection_check(12, false)?;
    for level in &report.levels {
        println!("n = {:>2}: |intersection| = {:>3}, |L2| = {:>3}", level.n, level.intersection, level.l2);
    }
    println!("identity holds up to 12: {}", report.holds);
    for w in l2_members(8) {
        println!("  {w}");
    }
    Ok(())
}

//! Factor occurrence counts over a slice, the binding bound and the
//! partition identity.
use langlab::corpus::CorpusLanguage;
use langlab::swaplab::{build_slice, l2_bound_check, slice_stats};

fn main() -> langlab::Result<()> {
    let n = 16;
    let slice = build_slice(&CorpusLanguage::L2, n, None, false)?;
    println!("|S| = {} at n = {n}", slice.len());

    for j in 1..=n / 4 {
        let r = l2_bound_check(n, j, false)?;
        let max = r.max.map(|o| o.count).unwrap_or(0);
        println!("j = {j}: max |S_i,u| = {max:>3}, bound {:>3}, holds {}", r.bound, r.holds);
    }

    let stats = slice_stats(&slice, 2)?;
    println!("offset sums for j = 2: {:?}", stats.offset_sums());
    print!("{}", stats.to_csv().lines().take(6).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}

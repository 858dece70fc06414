//! Choose n, k and j0 for a swapping constant m and check the chain of
//! inequalities exactly.
use langlab::swaplab::{choose_params, size_dominates};

fn main() -> langlab::Result<()> {
    for m in [1, 2, 10] {
        let p = choose_params(m)?;
        println!("m = {m:>2}: n = {}, k = {}, j0 = {}", p.n, p.k, p.j0);
        println!("        {:?}", p.checks());
        println!("        inequality at n - 16: {}", size_dominates(m, p.n - 16));
    }
    Ok(())
}

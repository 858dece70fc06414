//! Self-delimiting pair codes.
use langlab::advice::{prefix_pair_decode, prefix_pair_encode};
use langlab::word;

fn main() -> langlab::Result<()> {
    for (u, v) in [(word![], word![]), (word![1], word![0, 1]), (word![1, 0, 1], word![])] {
        let code = prefix_pair_encode(&u, &v)?;
        let (a, b) = prefix_pair_decode(&code)?;
        println!("({u}, {v}) -> {code} -> ({a}, {b})");
    }
    Ok(())
}

//! A regular language with parallel advice decides {0^n 1^n}.
use std::sync::Arc;

use langlab::advice::{leq_track_dfa, AdviceFunction, AdvisedLanguage};
use langlab::corpus::words_over;

fn main() -> langlab::Result<()> {
    let h = AdviceFunction::leq_parallel();
    let lang = AdvisedLanguage::parallel(Arc::new(leq_track_dfa()), h.clone());
    for n in 0..=6 {
        let members: Vec<String> = words_over(&[0, 1], n)
            .filter(|x| lang.member(x).unwrap_or(false))
            .map(|x| x.to_string())
            .collect();
        println!("n = {n}: h(n) = {:<14} members {:?}", h.generate(n)?.to_string(), members);
    }
    Ok(())
}

//! Serial advice for a DFA becomes parallel advice for a track automaton.
use std::collections::BTreeMap;
use std::sync::Arc;

use langlab::advice::{serial_to_parallel_reg, AdviceFunction, AdvisedLanguage};
use langlab::corpus::words_over;
use langlab::grammars::Dfa;
use langlab::word;

fn main() -> langlab::Result<()> {
    let parity = Dfa::from_json(include_str!("../data/parity.json"))?;
    let table: BTreeMap<usize, _> = [(0, word![]), (1, word![1]), (2, word![1, 1]), (3, word![0, 1, 0])].into();
    let g = AdviceFunction::from_table("table", table);

    let conv = serial_to_parallel_reg(&parity, &g)?;
    println!("track automaton: {} states, {} letters", conv.automaton.state_count(), conv.automaton.alphabet().len());
    let serial = AdvisedLanguage::serial(Arc::new(parity), g);
    let parallel = AdvisedLanguage::parallel(Arc::new(conv.automaton), conv.advice.clone());
    for n in 1..=3 {
        println!("h({n}) = {}", conv.advice.generate(n)?);
        for x in words_over(&[0, 1], n) {
            println!("  {x}: serial {} parallel {}", serial.member(&x)?, parallel.member(&x)?);
        }
    }
    Ok(())
}

use std::collections::BTreeSet;

use super::cfg::{Cfg, Symbol};
use super::cnf::CnfGrammar;
use crate::error::{LabError, Result};
use crate::words::{Letter, Word};

/// All words of `L(g)` of length at most `max_len`, in word order.
///
/// Bottom-up by length: the words of length `ℓ` derivable from each
/// nonterminal are saturated (to absorb λ- and unit-rules) before moving
/// to `ℓ + 1`, so cyclic grammars terminate.
pub fn enumerate_language(g: &Cfg, max_len: usize) -> BTreeSet<Word> {
    enumerate_bounded(g, max_len, u128::MAX).expect("unbounded enumeration cannot trip the guard")
}

/// Like [`enumerate_language`] but fails once more than `limit` words are
/// stored across all nonterminals.
pub fn enumerate_bounded(g: &Cfg, max_len: usize, limit: u128) -> Result<BTreeSet<Word>> {
    let v = g.nonterminal_count();
    // table[nt][len]
    let mut table: Vec<Vec<BTreeSet<Vec<Letter>>>> = vec![Vec::with_capacity(max_len + 1); v];
    let mut stored: u128 = 0;
    for len in 0..=max_len {
        for row in table.iter_mut() {
            row.push(BTreeSet::new());
        }
        loop {
            let mut changed = false;
            for p in g.productions() {
                let mut found = Vec::new();
                expand(&table, &p.body, len, &mut Vec::new(), &mut found);
                for w in found {
                    if table[p.head][len].insert(w) {
                        changed = true;
                        stored += 1;
                    }
                }
            }
            if stored > limit {
                return Err(LabError::CostGuard {
                    what: "language enumeration".into(),
                    needed: stored,
                    limit,
                });
            }
            if !changed {
                break;
            }
        }
    }
    Ok(table[g.start()]
        .iter()
        .flat_map(|by_len| by_len.iter().cloned().map(Word::new))
        .collect())
}

fn expand(
    table: &[Vec<BTreeSet<Vec<Letter>>>],
    body: &[Symbol],
    remaining: usize,
    prefix: &mut Vec<Letter>,
    out: &mut Vec<Vec<Letter>>,
) {
    let Some((first, rest)) = body.split_first() else {
        if remaining == 0 {
            out.push(prefix.clone());
        }
        return;
    };
    // Every remaining terminal needs one letter.
    let min_rest = rest.iter().filter(|s| matches!(s, Symbol::T(_))).count();
    if min_rest > remaining {
        return;
    }
    match *first {
        Symbol::T(l) => {
            if remaining == 0 {
                return;
            }
            prefix.push(l);
            expand(table, rest, remaining - 1, prefix, out);
            prefix.pop();
        }
        Symbol::N(n) => {
            for part in 0..=remaining - min_rest {
                for w in &table[n][part] {
                    let mark = prefix.len();
                    prefix.extend_from_slice(w);
                    expand(table, rest, remaining - part, prefix, out);
                    prefix.truncate(mark);
                }
            }
        }
    }
}

/// Lazily grown table of the words each CNF nonterminal derives, one
/// length at a time.
pub struct CnfLengthTable<'g> {
    g: &'g CnfGrammar,
    // words[len][nt], len starting at 1
    words: Vec<Vec<Vec<Word>>>,
    stored: u128,
    limit: u128,
}

impl<'g> CnfLengthTable<'g> {
    pub fn new(g: &'g CnfGrammar, limit: u128) -> Self {
        CnfLengthTable {
            g,
            words: vec![Vec::new()],
            stored: 0,
            limit,
        }
    }

    /// Start-symbol words of exactly `len` letters, sorted.
    pub fn start_words(&mut self, len: usize) -> Result<&[Word]> {
        if len == 0 {
            return Ok(&[]);
        }
        self.extend_to(len)?;
        Ok(&self.words[len][self.g.start()])
    }

    fn extend_to(&mut self, len: usize) -> Result<()> {
        let v = self.g.nonterminal_count();
        while self.words.len() <= len {
            let cur = self.words.len();
            let mut sets: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); v];
            if cur == 1 {
                for &(a, l) in self.g.terminal_rules() {
                    sets[a].insert(Word::new(vec![l]));
                }
            } else {
                for &(a, b, c) in self.g.binary_rules() {
                    for split in 1..cur {
                        for left in &self.words[split][b] {
                            for right in &self.words[cur - split][c] {
                                sets[a].insert(left.concat(right));
                            }
                        }
                    }
                }
            }
            self.stored += sets.iter().map(|s| s.len() as u128).sum::<u128>();
            if self.stored > self.limit {
                return Err(LabError::CostGuard {
                    what: "CNF length table".into(),
                    needed: self.stored,
                    limit: self.limit,
                });
            }
            self.words
                .push(sets.into_iter().map(|s| s.into_iter().collect()).collect());
        }
        Ok(())
    }
}

//! Membership oracles and enumerable languages.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::words::Word;

/// Decides membership of a word. Letters the oracle does not know are
/// never an error; such words are simply not members.
pub trait Membership: Send + Sync {
    fn contains(&self, w: &Word) -> bool;
}

/// A language that can also list its members of one exact length.
pub trait Language: Membership {
    fn name(&self) -> String;

    /// Number of candidates the generator touches to produce length `n`.
    fn generation_cost(&self, n: usize) -> u128;

    /// All members of length `n` in the canonical word order.
    fn members_of_length(&self, n: usize) -> Vec<Word>;
}

impl<T: Membership + ?Sized> Membership for &T {
    fn contains(&self, w: &Word) -> bool {
        (**self).contains(w)
    }
}

impl<T: Membership + ?Sized> Membership for Arc<T> {
    fn contains(&self, w: &Word) -> bool {
        (**self).contains(w)
    }
}

impl<T: Membership + ?Sized> Membership for Box<T> {
    fn contains(&self, w: &Word) -> bool {
        (**self).contains(w)
    }
}

impl<T: Language + ?Sized> Language for &T {
    fn name(&self) -> String {
        (**self).name()
    }
    fn generation_cost(&self, n: usize) -> u128 {
        (**self).generation_cost(n)
    }
    fn members_of_length(&self, n: usize) -> Vec<Word> {
        (**self).members_of_length(n)
    }
}

/// Wraps a plain predicate.
pub struct FnOracle<F>(pub F);

impl<F> Membership for FnOracle<F>
where
    F: Fn(&Word) -> bool + Send + Sync,
{
    fn contains(&self, w: &Word) -> bool {
        (self.0)(w)
    }
}

/// Caches verdicts of an inner oracle. Safe to share between threads.
pub struct Memoized<O> {
    inner: O,
    cache: RwLock<HashMap<Word, bool>>,
}

impl<O: Membership> Memoized<O> {
    pub fn new(inner: O) -> Self {
        Memoized {
            inner,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn cached(&self) -> usize {
        self.cache.read().expect("memo lock poisoned").len()
    }
}

impl<O: Membership> Membership for Memoized<O> {
    fn contains(&self, w: &Word) -> bool {
        if let Some(&hit) = self.cache.read().expect("memo lock poisoned").get(w) {
            return hit;
        }
        let verdict = self.inner.contains(w);
        self.cache
            .write()
            .expect("memo lock poisoned")
            .insert(w.clone(), verdict);
        verdict
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word;
    use std::sync::atomic::{AtomicUsize, Ordering};

    #[test]
    fn memo_calls_inner_once_per_word() {
        let calls = AtomicUsize::new(0);
        let memo = Memoized::new(FnOracle(|w: &Word| {
            calls.fetch_add(1, Ordering::SeqCst);
            w.len() % 2 == 0
        }));
        for _ in 0..3 {
            assert!(memo.contains(&word![1, 2]));
            assert!(!memo.contains(&word![1]));
        }
        assert_eq!(calls.load(Ordering::SeqCst), 2);
        assert_eq!(memo.cached(), 2);
    }
}

//! Advised membership.
//!
//! Parallel advice places `h(|x|)` on a second track under `x`; serial
//! advice prepends `g(|x|)` to `x`. Both need an advice word of length
//! exactly `|x|`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{LabError, Result};
use crate::grammars::{dfa_run, Dfa, State};
use crate::oracle::Membership;
use crate::words::{fuse_letter, zip_tracks, Letter, Word};

/// Padding letter for advice tails.
pub const PAD: Letter = 0;

type Generator = dyn Fn(usize) -> Result<Word> + Send + Sync;

/// A length-indexed advice function `n ↦ h(n)` with `|h(n)| = n`.
#[derive(Clone)]
pub struct AdviceFunction {
    name: String,
    generate: Arc<Generator>,
}

impl fmt::Debug for AdviceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdviceFunction").field("name", &self.name).finish()
    }
}

impl AdviceFunction {
    pub fn from_fn(name: &str, f: impl Fn(usize) -> Word + Send + Sync + 'static) -> Self {
        AdviceFunction {
            name: name.to_string(),
            generate: Arc::new(move |n| Ok(f(n))),
        }
    }

    pub fn from_fallible(name: &str, f: impl Fn(usize) -> Result<Word> + Send + Sync + 'static) -> Self {
        AdviceFunction {
            name: name.to_string(),
            generate: Arc::new(f),
        }
    }

    /// A table of advice words; lengths missing from the table are errors.
    pub fn from_table(name: &str, table: BTreeMap<usize, Word>) -> Self {
        AdviceFunction::from_fallible(name, move |n| {
            table.get(&n).cloned().ok_or(LabError::Advice {
                n,
                msg: "no table entry".into(),
            })
        })
    }

    /// Reads `{"0": [], "3": [1,0,0], ...}`.
    pub fn from_json_table(name: &str, text: &str) -> Result<Self> {
        let raw: BTreeMap<String, Word> =
            serde_json::from_str(text).map_err(|e| LabError::Io(format!("advice table: {e}")))?;
        let table = raw
            .into_iter()
            .map(|(k, w)| {
                k.parse::<usize>()
                    .map(|n| (n, w))
                    .map_err(|_| LabError::Io(format!("advice table key `{k}` is not a length")))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(AdviceFunction::from_table(name, table))
    }

    /// `0^{n/2} 1^{n/2}` for even `n`, `2^n` for odd `n`.
    pub fn leq_parallel() -> Self {
        AdviceFunction::from_fn("leq-parallel", |n| {
            if n % 2 == 0 {
                Word::repeat(0, n / 2).concat(&Word::repeat(1, n / 2))
            } else {
                Word::repeat(2, n)
            }
        })
    }

    pub fn constant(letter: Letter) -> Self {
        AdviceFunction::from_fn(&format!("const-{letter}"), move |n| Word::repeat(letter, n))
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "leq-parallel" => Ok(AdviceFunction::leq_parallel()),
            "zeros" => Ok(AdviceFunction::constant(0)),
            "ones" => Ok(AdviceFunction::constant(1)),
            _ => Err(LabError::Unknown {
                kind: "advice",
                name: name.to_string(),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `h(n)`, checked against the length law.
    pub fn generate(&self, n: usize) -> Result<Word> {
        let w = (self.generate)(n)?;
        if w.len() != n {
            return Err(LabError::Advice {
                n,
                msg: format!("advice has length {}", w.len()),
            });
        }
        Ok(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AdviceMode {
    Parallel,
    Serial,
}

/// A language decided by an inner oracle together with advice.
///
/// In parallel mode the inner oracle reads fused letters (see
/// [`crate::words::fuse_letter`]); in serial mode it reads `g(|x|) x`.
#[derive(Clone)]
pub struct AdvisedLanguage {
    pub mode: AdviceMode,
    pub inner: Arc<dyn Membership>,
    pub advice: AdviceFunction,
}

impl AdvisedLanguage {
    pub fn parallel(inner: Arc<dyn Membership>, advice: AdviceFunction) -> Self {
        AdvisedLanguage {
            mode: AdviceMode::Parallel,
            inner,
            advice,
        }
    }

    pub fn serial(inner: Arc<dyn Membership>, advice: AdviceFunction) -> Self {
        AdvisedLanguage {
            mode: AdviceMode::Serial,
            inner,
            advice,
        }
    }

    /// Decides `x`; errors come only from the advice function.
    pub fn member(&self, x: &Word) -> Result<bool> {
        match self.mode {
            AdviceMode::Parallel => parallel_member(self, x),
            AdviceMode::Serial => serial_member(self, x),
        }
    }
}

/// `[x; h(|x|)] ∈ L′`.
pub fn parallel_member(lang: &AdvisedLanguage, x: &Word) -> Result<bool> {
    let h = lang.advice.generate(x.len())?;
    match zip_tracks(x, &h)?.fuse() {
        Ok(fused) => Ok(lang.inner.contains(&fused)),
        // a letter too wide for a track cannot belong to any track alphabet
        Err(LabError::TrackOverflow(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `g(|x|) x ∈ L″`.
pub fn serial_member(lang: &AdvisedLanguage, x: &Word) -> Result<bool> {
    let g = lang.advice.generate(x.len())?;
    Ok(lang.inner.contains(&g.concat(x)))
}

/// The track automaton deciding `L_eq` with [`AdviceFunction::leq_parallel`]:
/// it accepts nonempty words whose tracks agree letter by letter.
pub fn leq_track_dfa() -> Dfa {
    let mut alphabet = Vec::new();
    let mut agree = BTreeSet::new();
    for top in [0, 1] {
        for bottom in [0, 1, 2] {
            let l = fuse_letter(top, bottom).expect("small letters fit");
            alphabet.push(l);
            if top == bottom {
                agree.insert(l);
            }
        }
    }
    // 0 = start, 1 = agreeing so far, 2 = dead
    Dfa::from_fn(3, alphabet, 0, [1], |q, l| {
        if q != 2 && agree.contains(&l) {
            1
        } else {
            2
        }
    })
    .expect("total by construction")
}

/// Result of turning serial regular advice into parallel regular advice.
#[derive(Clone, Debug)]
pub struct ParallelConversion {
    pub advice: AdviceFunction,
    pub automaton: Dfa,
    /// Bottom-track letter for state `q` is `state_offset + q + 1`.
    pub state_offset: Letter,
}

/// Moves serial advice `g` for automaton `m` onto a parallel track.
///
/// `h(n)` is the encoded state `q_(n) = δ*(start, g(n))` followed by
/// `n − 1` padding letters, and `h(0) = λ`. The track automaton reads the
/// state from the first column, then runs `m` on the top track alone. Its
/// start state accepts exactly when `m` accepts `g(0) = λ`.
pub fn serial_to_parallel_reg(m: &Dfa, g: &AdviceFunction) -> Result<ParallelConversion> {
    let q_count = m.state_count();
    let state_offset = m.alphabet().iter().copied().max().map_or(1, |l| l + 1);
    let encode = move |q: State| state_offset + q as Letter + 1;

    let m_for_h = m.clone();
    let g_for_h = g.clone();
    let advice = AdviceFunction::from_fallible(&format!("{}-parallel", g.name()), move |n| {
        if n == 0 {
            return Ok(Word::empty());
        }
        let prefix = g_for_h.generate(n)?;
        let q = dfa_run(&m_for_h, m_for_h.start(), &prefix).map_err(|e| LabError::Advice {
            n,
            msg: format!("serial advice leaves the automaton alphabet: {e}"),
        })?;
        Ok(Word::new(vec![encode(q)]).concat(&Word::repeat(PAD, n - 1)))
    });

    // states: 0..q_count copy m, then fresh start, then dead
    let fresh_start = q_count;
    let dead = q_count + 1;
    let bottoms: Vec<Letter> = std::iter::once(PAD).chain((0..q_count).map(encode)).collect();
    let mut names: Vec<String> = m.names().to_vec();
    names.push("start".into());
    names.push("dead".into());
    let mut alphabet = Vec::new();
    let mut transitions = Vec::new();
    for &a in m.alphabet() {
        for &b in &bottoms {
            let fused = fuse_letter(a, b)?;
            alphabet.push(fused);
            for q in 0..q_count {
                transitions.push((q, fused, m.step(q, a)?));
            }
            let from_start = if b == PAD {
                dead
            } else {
                m.step((b - state_offset - 1) as State, a)?
            };
            transitions.push((fresh_start, fused, from_start));
            transitions.push((dead, fused, dead));
        }
    }
    let mut accepting: Vec<State> = (0..q_count).filter(|&q| m.is_accepting(q)).collect();
    if m.is_accepting(m.start()) {
        accepting.push(fresh_start);
    }
    let automaton = Dfa::new(names, alphabet, fresh_start, accepting, transitions)?;
    Ok(ParallelConversion {
        advice,
        automaton,
        state_offset,
    })
}

/// Codes `(u, v)` as `u₁u₁⋯u_mu_m 01 v₁v₁⋯v_ℓv_ℓ 01`.
pub fn prefix_pair_encode(u: &Word, v: &Word) -> Result<Word> {
    let mut out = Vec::with_capacity(2 * (u.len() + v.len()) + 4);
    for part in [u, v] {
        for bit in part.iter() {
            if bit > 1 {
                return Err(LabError::PairCode(format!("letter {bit} is not a bit")));
            }
            out.extend([bit, bit]);
        }
        out.extend([0, 1]);
    }
    Ok(Word::new(out))
}

pub fn prefix_pair_decode(code: &Word) -> Result<(Word, Word)> {
    let s = code.letters();
    let mut parts = Vec::with_capacity(2);
    let mut pos = 0;
    while parts.len() < 2 {
        let mut bits = Vec::new();
        loop {
            match s.get(pos..pos + 2) {
                None => return Err(LabError::PairCode("truncated input".into())),
                Some([0, 1]) => break,
                Some([x, y]) if x == y && *x <= 1 => bits.push(*x),
                Some(pair) => return Err(LabError::PairCode(format!("invalid pair {pair:?} at {pos}"))),
            }
            pos += 2;
        }
        pos += 2;
        parts.push(Word::new(bits));
    }
    if pos != s.len() {
        return Err(LabError::PairCode(format!("{} trailing letters", s.len() - pos)));
    }
    let v = parts.pop().expect("two parts");
    let u = parts.pop().expect("two parts");
    Ok((u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::words_over;
    use crate::grammars::dfa_accepts;
    use crate::oracle::FnOracle;
    use crate::word;

    fn leq() -> AdvisedLanguage {
        AdvisedLanguage::parallel(Arc::new(leq_track_dfa()), AdviceFunction::leq_parallel())
    }

    #[test]
    fn parallel_leq_examples() {
        let l = leq();
        assert!(l.member(&word![0, 0, 1, 1]).unwrap());
        assert!(!l.member(&word![0, 1, 0, 1]).unwrap());
        assert!(!l.member(&word![0, 0, 0]).unwrap());
        assert!(!l.member(&Word::empty()).unwrap());
    }

    #[test]
    fn serial_examples() {
        let all_zero = Arc::new(FnOracle(|w: &Word| w.iter().all(|l| l == 0)));
        let has_one = Arc::new(FnOracle(|w: &Word| w.iter().any(|l| l == 1)));
        let zeros = AdviceFunction::constant(0);
        assert!(AdvisedLanguage::serial(all_zero, zeros.clone()).member(&word![0, 0]).unwrap());
        let l = AdvisedLanguage::serial(has_one, zeros);
        assert!(l.member(&word![0, 1]).unwrap());
        assert!(!l.member(&word![0, 0]).unwrap());
    }

    #[test]
    fn advice_length_law_enforced() {
        let bad = AdviceFunction::from_fn("bad", |_| word![1]);
        assert!(matches!(bad.generate(3), Err(LabError::Advice { n: 3, .. })));
        for n in 0..=64 {
            assert_eq!(AdviceFunction::leq_parallel().generate(n).unwrap().len(), n);
        }
    }

    #[test]
    fn table_advice() {
        let h = AdviceFunction::from_json_table("t", r#"{"0": [], "2": [1, 0]}"#).unwrap();
        assert_eq!(h.generate(2).unwrap(), word![1, 0]);
        assert!(matches!(h.generate(1), Err(LabError::Advice { n: 1, .. })));
        assert!(AdviceFunction::from_json_table("t", r#"{"x": []}"#).is_err());
    }

    fn check_conversion(m: &Dfa, g: &AdviceFunction, max_len: usize) {
        let conv = serial_to_parallel_reg(m, g).unwrap();
        let par = AdvisedLanguage::parallel(Arc::new(conv.automaton.clone()), conv.advice.clone());
        for n in 0..=max_len {
            for x in words_over(m.alphabet(), n) {
                let serial = dfa_accepts(m, &g.generate(n).unwrap().concat(&x)).unwrap();
                assert_eq!(par.member(&x).unwrap(), serial, "x = {x:?}");
            }
        }
    }

    #[test]
    fn conversion_parity() {
        let parity = Dfa::from_fn(2, [0, 1], 0, [0], |q, a| q ^ a as usize).unwrap();
        check_conversion(&parity, &AdviceFunction::constant(1), 8);
        let conv = serial_to_parallel_reg(&parity, &AdviceFunction::constant(1)).unwrap();
        assert_eq!(conv.advice.generate(0).unwrap(), Word::empty());
        assert_eq!(conv.advice.generate(3).unwrap(), word![conv.state_offset + 2, 0, 0]);
    }

    #[test]
    fn conversion_universal_and_empty() {
        let all = Dfa::from_fn(1, [0, 1], 0, [0], |_, _| 0).unwrap();
        let none = Dfa::from_fn(1, [0, 1], 0, [], |_, _| 0).unwrap();
        check_conversion(&all, &AdviceFunction::constant(0), 6);
        check_conversion(&none, &AdviceFunction::constant(0), 6);
    }

    #[test]
    fn pair_code_examples() {
        assert_eq!(prefix_pair_encode(&Word::empty(), &Word::empty()).unwrap(), word![0, 1, 0, 1]);
        let code = prefix_pair_encode(&word![0, 1], &word![1]).unwrap();
        assert_eq!(code, word![0, 0, 1, 1, 0, 1, 1, 1, 0, 1]);
        assert_eq!(prefix_pair_decode(&code).unwrap(), (word![0, 1], word![1]));
        assert!(prefix_pair_encode(&word![2], &Word::empty()).is_err());
    }

    #[test]
    fn pair_code_rejects_malformed() {
        assert!(prefix_pair_decode(&word![0, 0, 0, 1]).is_err()); // missing second terminator
        assert!(prefix_pair_decode(&word![1, 0, 0, 1, 0, 1]).is_err()); // pair 10
        assert!(prefix_pair_decode(&word![0, 1, 0]).is_err()); // truncated
        assert!(prefix_pair_decode(&word![0, 1, 0, 1, 1, 1]).is_err()); // trailing
        assert!(prefix_pair_decode(&Word::empty()).is_err());
    }
}

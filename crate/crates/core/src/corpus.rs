//! The concrete test languages: predicates, exact-length generators and
//! grammars.
//!
//! Symbolic letters use the default [`SymbolTable`] convention:
//!
//! | symbol | letter |
//! |--------|--------|
//! | `0`, `1`, `2` | 0, 1, 2 |
//! | `#` | 35 |
//! | `a`, `b`, `c` | 97, 98, 99 |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{LabError, Result};
use crate::grammars::{cyk_member, enumerate_bounded, nt, t, to_cnf, Cfg, CfgBuilder, SymbolTable};
use crate::oracle::{Language, Membership};
use crate::words::{nest_l2, reverse, Letter, Word};

pub const SHARP: Letter = 35;
pub const A: Letter = 97;
pub const B: Letter = 98;
pub const C: Letter = 99;

/// Letters of `L₂` in block order: `{1,2}`, `{3,6}`, `{15,30}`, `{5,10}`.
pub const L2_ALPHABET: [Letter; 8] = [1, 2, 3, 6, 5, 10, 15, 30];
const X_LETTERS: [Letter; 4] = [5, 10, 15, 30];
const Y_LETTERS: [Letter; 4] = [1, 2, 3, 6];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CorpusLanguage {
    /// `0^m 1^m`, m ≥ 1
    LEq,
    /// `0^m 1^m 2^m`, m ≥ 1
    L3Eq,
    /// `u # uᴿ` with `u ∈ {0,1}*`
    PalSharp,
    /// Nested palindromes `w (wᴿ)×3 (w)×15 (wᴿ)×5`, `w ∈ {1,2}+`
    L2,
    /// `w (wᴿ)×3 x`, `w ∈ {1,2}+`, `x ∈ {5,10,15,30}+`
    L21,
    /// `y (yᴿ)×5`, `y ∈ {1,2,3,6}+`
    L22,
    /// `w x y`, `|w| = |x|`, `|y| = 2|w|`, over the block alphabets of `L₂`
    L2Prime,
    /// `a^m b^m c^{2m}`, m ≥ 1
    L2DoublePrime,
}

impl CorpusLanguage {
    pub const ALL: [CorpusLanguage; 8] = [
        CorpusLanguage::LEq,
        CorpusLanguage::L3Eq,
        CorpusLanguage::PalSharp,
        CorpusLanguage::L2,
        CorpusLanguage::L21,
        CorpusLanguage::L22,
        CorpusLanguage::L2Prime,
        CorpusLanguage::L2DoublePrime,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CorpusLanguage::LEq => "L_eq",
            CorpusLanguage::L3Eq => "L_3eq",
            CorpusLanguage::PalSharp => "Pal_sharp",
            CorpusLanguage::L2 => "L2",
            CorpusLanguage::L21 => "L2_1",
            CorpusLanguage::L22 => "L2_2",
            CorpusLanguage::L2Prime => "L2_prime",
            CorpusLanguage::L2DoublePrime => "L2_dprime",
        }
    }

    /// The letters any member may use.
    pub fn alphabet(self) -> Vec<Letter> {
        match self {
            CorpusLanguage::LEq => vec![0, 1],
            CorpusLanguage::L3Eq => vec![0, 1, 2],
            CorpusLanguage::PalSharp => vec![0, 1, SHARP],
            CorpusLanguage::L2DoublePrime => vec![A, B, C],
            _ => L2_ALPHABET.to_vec(),
        }
    }

    pub fn grammar(self) -> Option<Cfg> {
        match self {
            CorpusLanguage::LEq => Some(grammar_leq()),
            CorpusLanguage::PalSharp => Some(grammar_pal_sharp()),
            CorpusLanguage::L21 => Some(grammar_l2_1()),
            CorpusLanguage::L22 => Some(grammar_l2_2()),
            _ => None,
        }
    }

    pub fn predicate(self, w: &Word) -> bool {
        let s = w.letters();
        match self {
            CorpusLanguage::LEq => is_blocks(s, &[(0, 1), (1, 1)]),
            CorpusLanguage::L3Eq => is_blocks(s, &[(0, 1), (1, 1), (2, 1)]),
            CorpusLanguage::PalSharp => {
                let n = s.len();
                n % 2 == 1
                    && s[n / 2] == SHARP
                    && s[..n / 2].iter().all(|&l| l == 0 || l == 1)
                    && s[..n / 2].iter().eq(s[n / 2 + 1..].iter().rev())
            }
            CorpusLanguage::L2 => {
                s.len() % 4 == 0
                    && !s.is_empty()
                    && nest_l2(&w.factor(0..s.len() / 4)).is_ok_and(|z| z == *w)
            }
            CorpusLanguage::L21 => {
                let k = s.iter().take_while(|&&l| l == 1 || l == 2).count();
                k >= 1
                    && s.len() > 2 * k
                    && (0..k).all(|i| s[k + i] == 3 * s[k - 1 - i])
                    && s[2 * k..].iter().all(|l| X_LETTERS.contains(l))
            }
            CorpusLanguage::L22 => {
                let k = s.len() / 2;
                s.len() % 2 == 0
                    && k >= 1
                    && s[..k].iter().all(|l| Y_LETTERS.contains(l))
                    && (0..k).all(|i| s[k + i] == 5 * s[k - 1 - i])
            }
            CorpusLanguage::L2Prime => {
                let k = s.len() / 4;
                s.len() % 4 == 0
                    && k >= 1
                    && s[..k].iter().all(|&l| l == 1 || l == 2)
                    && s[k..2 * k].iter().all(|&l| l == 3 || l == 6)
                    && s[2 * k..].iter().all(|l| X_LETTERS.contains(l))
            }
            CorpusLanguage::L2DoublePrime => is_blocks(s, &[(A, 1), (B, 1), (C, 2)]),
        }
    }

    /// All members of length exactly `n`, sorted.
    pub fn members(self, n: usize) -> Vec<Word> {
        let mut out: Vec<Word> = match self {
            CorpusLanguage::LEq => blocks(n, &[(0, 1), (1, 1)]).into_iter().collect(),
            CorpusLanguage::L3Eq => blocks(n, &[(0, 1), (1, 1), (2, 1)]).into_iter().collect(),
            CorpusLanguage::L2DoublePrime => blocks(n, &[(A, 1), (B, 1), (C, 2)]).into_iter().collect(),
            CorpusLanguage::PalSharp => {
                if n % 2 == 0 {
                    return Vec::new();
                }
                words_over(&[0, 1], n / 2)
                    .map(|u| Word::join(&[u.clone(), Word::new(vec![SHARP]), reverse(&u)]))
                    .collect()
            }
            CorpusLanguage::L2 => l2_members(n).into_iter().collect(),
            CorpusLanguage::L21 => {
                let mut v = Vec::new();
                for k in (1..).take_while(|k| 2 * k < n) {
                    for w in words_over(&[1, 2], k) {
                        let head = w.concat(&scaled_rev(&w, 3));
                        for x in words_over(&X_LETTERS, n - 2 * k) {
                            v.push(head.concat(&x));
                        }
                    }
                }
                v
            }
            CorpusLanguage::L22 => {
                if n % 2 == 1 || n == 0 {
                    return Vec::new();
                }
                words_over(&Y_LETTERS, n / 2)
                    .map(|y| y.concat(&scaled_rev(&y, 5)))
                    .collect()
            }
            CorpusLanguage::L2Prime => {
                if n % 4 != 0 || n == 0 {
                    return Vec::new();
                }
                let k = n / 4;
                let mut v = Vec::new();
                for w in words_over(&[1, 2], k) {
                    for x in words_over(&[3, 6], k) {
                        let wx = w.concat(&x);
                        for y in words_over(&X_LETTERS, 2 * k) {
                            v.push(wx.concat(&y));
                        }
                    }
                }
                v
            }
        };
        out.sort();
        out
    }

    /// Number of members of length `n` (the generator's work).
    pub fn count(self, n: usize) -> u128 {
        let pow = |b: u128, e: usize| b.checked_pow(e as u32).unwrap_or(u128::MAX);
        match self {
            CorpusLanguage::LEq => u128::from(n >= 2 && n % 2 == 0),
            CorpusLanguage::L3Eq => u128::from(n >= 3 && n % 3 == 0),
            CorpusLanguage::L2DoublePrime => u128::from(n >= 4 && n % 4 == 0),
            CorpusLanguage::PalSharp if n % 2 == 1 => pow(2, n / 2),
            CorpusLanguage::PalSharp => 0,
            CorpusLanguage::L2 if n >= 4 && n % 4 == 0 => pow(2, n / 4),
            CorpusLanguage::L21 => (1..)
                .take_while(|k| 2 * k < n)
                .fold(0u128, |acc, k| acc.saturating_add(pow(2, k).saturating_mul(pow(4, n - 2 * k)))),
            CorpusLanguage::L22 if n >= 2 && n % 2 == 0 => pow(4, n / 2),
            CorpusLanguage::L2Prime if n >= 4 && n % 4 == 0 => pow(2, 6 * (n / 4)),
            _ => 0,
        }
    }
}

impl fmt::Display for CorpusLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CorpusLanguage {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '′', '"'], "_");
        let found = match key.as_str() {
            "l_eq" | "leq" => CorpusLanguage::LEq,
            "l_3eq" | "l3eq" => CorpusLanguage::L3Eq,
            "pal_sharp" | "pal_#" | "palsharp" => CorpusLanguage::PalSharp,
            "l2" => CorpusLanguage::L2,
            "l2_1" | "l21" => CorpusLanguage::L21,
            "l2_2" | "l22" => CorpusLanguage::L22,
            "l2_prime" | "l2p" | "l2'" => CorpusLanguage::L2Prime,
            "l2_dprime" | "l2pp" | "l2''" => CorpusLanguage::L2DoublePrime,
            _ => {
                return Err(LabError::Unknown {
                    kind: "language",
                    name: s.to_string(),
                })
            }
        };
        Ok(found)
    }
}

impl Membership for CorpusLanguage {
    fn contains(&self, w: &Word) -> bool {
        self.predicate(w)
    }
}

impl Language for CorpusLanguage {
    fn name(&self) -> String {
        self.id().to_string()
    }

    fn generation_cost(&self, n: usize) -> u128 {
        self.count(n)
    }

    fn members_of_length(&self, n: usize) -> Vec<Word> {
        self.members(n)
    }
}

/// A language given by a grammar: CYK for membership, bounded enumeration
/// for generation.
pub struct GrammarLanguage {
    name: String,
    cfg: Cfg,
    cnf: crate::grammars::CnfGrammar,
}

impl GrammarLanguage {
    pub fn new(name: &str, cfg: Cfg) -> Self {
        let cnf = to_cnf(&cfg);
        GrammarLanguage {
            name: name.to_string(),
            cfg,
            cnf,
        }
    }

    pub fn cfg(&self) -> &Cfg {
        &self.cfg
    }

    pub fn cnf(&self) -> &crate::grammars::CnfGrammar {
        &self.cnf
    }
}

impl Membership for GrammarLanguage {
    fn contains(&self, w: &Word) -> bool {
        cyk_member(&self.cnf, w)
    }
}

impl Language for GrammarLanguage {
    fn name(&self) -> String {
        self.name.clone()
    }

    /// Candidate words of length `n` over the terminal alphabet.
    fn generation_cost(&self, n: usize) -> u128 {
        (self.cnf.terminals().len() as u128)
            .checked_pow(n as u32)
            .unwrap_or(u128::MAX)
    }

    fn members_of_length(&self, n: usize) -> Vec<Word> {
        let alphabet: Vec<Letter> = self.cnf.terminals().iter().copied().collect();
        words_over(&alphabet, n).filter(|w| self.contains(w)).collect()
    }
}

/// Every word of length `n` over `alphabet`, in lexicographic order of the
/// alphabet as given.
pub fn words_over(alphabet: &[Letter], n: usize) -> impl Iterator<Item = Word> + '_ {
    let base = alphabet.len();
    let total = if base == 0 {
        usize::from(n == 0)
    } else {
        base.checked_pow(n as u32).expect("alphabet power overflows usize")
    };
    (0..total).map(move |mut code| {
        let mut letters = vec![0; n];
        for slot in letters.iter_mut().rev() {
            *slot = alphabet[code % base];
            code /= base;
        }
        Word::new(letters)
    })
}

fn scaled_rev(w: &Word, c: Letter) -> Word {
    w.iter().rev().map(|l| l * c).collect()
}

/// `l₁^{m·r₁} l₂^{m·r₂} …` for some m ≥ 1.
fn is_blocks(s: &[Letter], shape: &[(Letter, usize)]) -> bool {
    let unit: usize = shape.iter().map(|(_, r)| r).sum();
    if s.is_empty() || s.len() % unit != 0 {
        return false;
    }
    let m = s.len() / unit;
    let mut pos = 0;
    for &(letter, r) in shape {
        if s[pos..pos + m * r].iter().any(|&l| l != letter) {
            return false;
        }
        pos += m * r;
    }
    true
}

fn blocks(n: usize, shape: &[(Letter, usize)]) -> Option<Word> {
    let unit: usize = shape.iter().map(|(_, r)| r).sum();
    if n == 0 || n % unit != 0 {
        return None;
    }
    let m = n / unit;
    Some(shape.iter().flat_map(|&(l, r)| std::iter::repeat_n(l, m * r)).collect())
}

/// The members of `L₂` of length `n`: `nest_l2(w)` for every `w ∈ {1,2}^{n/4}`.
pub fn l2_members(n: usize) -> BTreeSet<Word> {
    if n == 0 || n % 4 != 0 {
        return BTreeSet::new();
    }
    words_over(&[1, 2], n / 4)
        .map(|w| nest_l2(&w).expect("binary word over {1,2} nests"))
        .collect()
}

/// The member `a^m b^m c^{2m}` of length `n`, if any.
pub fn l2pp_members(n: usize) -> BTreeSet<Word> {
    blocks(n, &[(A, 1), (B, 1), (C, 2)]).into_iter().collect()
}

/// `S -> W X`, `W -> a W 3a | a 3a` for `a ∈ {1,2}`, `X -> c X | c` for
/// `c ∈ {5,10,15,30}`.
pub fn grammar_l2_1() -> Cfg {
    let mut b = CfgBuilder::new("S").rule("S", [nt("W"), nt("X")]);
    for a in [1, 2] {
        b = b.rule("W", [t(a), nt("W"), t(3 * a)]).rule("W", [t(a), t(3 * a)]);
    }
    for c in X_LETTERS {
        b = b.rule("X", [t(c), nt("X")]).rule("X", [t(c)]);
    }
    b.build()
}

/// `Y -> a Y 5a | a 5a` for `a ∈ {1,2,3,6}`.
pub fn grammar_l2_2() -> Cfg {
    let mut b = CfgBuilder::new("Y");
    for a in Y_LETTERS {
        b = b.rule("Y", [t(a), nt("Y"), t(5 * a)]).rule("Y", [t(a), t(5 * a)]);
    }
    b.build()
}

pub fn grammar_leq() -> Cfg {
    CfgBuilder::new("S")
        .rule("S", [t(0), nt("S"), t(1)])
        .rule("S", [t(0), t(1)])
        .build()
}

pub fn grammar_pal_sharp() -> Cfg {
    CfgBuilder::new("S")
        .rule("S", [t(0), nt("S"), t(0)])
        .rule("S", [t(1), nt("S"), t(1)])
        .rule("S", [t(SHARP)])
        .build()
}

/// Nonempty even-length palindromes over `{0,1}`.
pub fn grammar_even_palindromes() -> Cfg {
    CfgBuilder::new("S")
        .rule("S", [t(0), nt("S"), t(0)])
        .rule("S", [t(1), nt("S"), t(1)])
        .rule("S", [t(0), t(0)])
        .rule("S", [t(1), t(1)])
        .build()
}

/// `a^m b^m c^t` with m, t ≥ 1.
pub fn grammar_ambm_ct() -> Cfg {
    CfgBuilder::new("S")
        .rule("S", [nt("E"), nt("K")])
        .rule("E", [t(A), nt("E"), t(B)])
        .rule("E", [t(A), t(B)])
        .rule("K", [t(C), nt("K")])
        .rule("K", [t(C)])
        .build()
}

/// `a^n b^n`, n ≥ 1.
pub fn grammar_anbn() -> Cfg {
    CfgBuilder::new("S")
        .rule("S", [t(A), nt("S"), t(B)])
        .rule("S", [t(A), t(B)])
        .build()
}

/// `a+` as `S -> S S | a`.
pub fn grammar_a_plus() -> Cfg {
    CfgBuilder::new("S")
        .rule("S", [nt("S"), nt("S")])
        .rule("S", [t(A)])
        .build()
}

/// Built-in grammars addressable by name.
pub fn named_grammar(name: &str) -> Result<Cfg> {
    if let Ok(lang) = name.parse::<CorpusLanguage>() {
        if let Some(g) = lang.grammar() {
            return Ok(g);
        }
    }
    match name {
        "even-pal" => Ok(grammar_even_palindromes()),
        "ambm-ct" => Ok(grammar_ambm_ct()),
        "anbn" => Ok(grammar_anbn()),
        "a-plus" => Ok(grammar_a_plus()),
        _ => Err(LabError::Unknown {
            kind: "grammar",
            name: name.to_string(),
        }),
    }
}

/// Helper for symbolic word literals such as `a,a,b,b,c,c,c,c`.
pub fn symbolic(text: &str) -> Word {
    SymbolTable::new().word(text).expect("valid symbolic word")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionLevel {
    pub n: usize,
    pub intersection: usize,
    pub l2: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub max_len: usize,
    pub levels: Vec<IntersectionLevel>,
    pub holds: bool,
    pub counterexample: Option<Word>,
}

pub const INTERSECTION_MAX_LEN: usize = 12;

/// Checks `L(G₂,₁) ∩ L(G₂,₂) = L₂` on every length up to `max_len`.
///
/// The candidates are the enumerated words of `G₂,₂`; those CYK accepts
/// under both grammars form the intersection, which is compared with
/// [`l2_members`] length by length.
pub fn intersection_check(max_len: usize, force: bool) -> Result<IntersectionReport> {
    if max_len > INTERSECTION_MAX_LEN && !force {
        return Err(LabError::CostGuard {
            what: "intersection check length".into(),
            needed: max_len as u128,
            limit: INTERSECTION_MAX_LEN as u128,
        });
    }
    let g1 = to_cnf(&grammar_l2_1());
    let g2 = to_cnf(&grammar_l2_2());
    let candidates = enumerate_bounded(&grammar_l2_2(), max_len, 50_000_000)?;
    let mut levels = Vec::new();
    let mut counterexample = None;
    for n in 1..=max_len {
        let inter: BTreeSet<Word> = candidates
            .iter()
            .filter(|w| w.len() == n && cyk_member(&g1, w) && cyk_member(&g2, w))
            .cloned()
            .collect();
        let l2 = l2_members(n);
        let equal = inter == l2;
        if !equal && counterexample.is_none() {
            counterexample = inter.symmetric_difference(&l2).next().cloned();
        }
        levels.push(IntersectionLevel {
            n,
            intersection: inter.len(),
            l2: l2.len(),
            equal,
        });
    }
    Ok(IntersectionReport {
        max_len,
        holds: levels.iter().all(|l| l.equal),
        levels,
        counterexample,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammars::enumerate_language;
    use crate::word;

    #[test]
    fn l2_examples() {
        assert_eq!(
            l2_members(4),
            BTreeSet::from([word![1, 3, 15, 5], word![2, 6, 30, 10]])
        );
        assert!(l2_members(6).is_empty());
        assert_eq!(l2_members(16).len(), 16);
        for t in 1..=8 {
            assert_eq!(l2_members(4 * t).len(), 1 << t);
        }
    }

    #[test]
    fn grammar_smallest_members() {
        let g1 = to_cnf(&grammar_l2_1());
        let g2 = to_cnf(&grammar_l2_2());
        assert!(cyk_member(&g1, &word![1, 3, 5]));
        assert!(cyk_member(&g2, &word![1, 5]));
        let z = word![1, 2, 6, 3, 15, 30, 10, 5];
        assert!(cyk_member(&g1, &z) && cyk_member(&g2, &z));
        assert!(CorpusLanguage::L21.predicate(&z) && CorpusLanguage::L22.predicate(&z));
    }

    #[test]
    fn l2pp_examples() {
        let lang = CorpusLanguage::L2DoublePrime;
        assert!(lang.predicate(&symbolic("a,b,c,c")));
        assert!(!lang.predicate(&symbolic("a,b,c")));
        assert!(!lang.predicate(&Word::empty()));
        assert_eq!(l2pp_members(8), BTreeSet::from([symbolic("a,a,b,b,c,c,c,c")]));
        for z in l2_members(8) {
            assert!(CorpusLanguage::L2Prime.predicate(&z));
        }
    }

    #[test]
    fn intersection_small() {
        let r = intersection_check(3, false).unwrap();
        assert!(r.holds);
        assert!(r.levels.iter().all(|l| l.intersection == 0 && l.l2 == 0));
        let r = intersection_check(8, false).unwrap();
        assert!(r.holds);
        let counts: Vec<usize> = r.levels.iter().map(|l| l.intersection).collect();
        assert_eq!(counts, vec![0, 0, 0, 2, 0, 0, 0, 4]);
        assert!(intersection_check(13, false).is_err());
    }

    #[test]
    fn generators_match_predicates_exhaustively() {
        for lang in CorpusLanguage::ALL {
            let alphabet = lang.alphabet();
            for n in 0..=12usize {
                let power = (alphabet.len() as u128).pow(n as u32);
                if power > 2_000_000 {
                    continue;
                }
                let filtered: Vec<Word> = words_over(&alphabet, n).filter(|w| lang.predicate(w)).collect();
                let mut sorted = filtered.clone();
                sorted.sort();
                assert_eq!(lang.members(n), sorted, "{lang} at length {n}");
                assert_eq!(lang.count(n), sorted.len() as u128, "{lang} count at {n}");
            }
        }
    }

    #[test]
    fn structured_generators_beyond_exhaustive_range() {
        for lang in CorpusLanguage::ALL {
            for n in 0..=12usize {
                if lang.count(n) > 300_000 {
                    continue;
                }
                let members = lang.members(n);
                assert_eq!(members.len() as u128, lang.count(n));
                assert!(members.iter().all(|w| w.len() == n && lang.predicate(w)));
                assert!(members.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn grammars_agree_with_generators() {
        for lang in CorpusLanguage::ALL {
            let Some(g) = lang.grammar() else { continue };
            let words = enumerate_language(&g, 8);
            for n in 0..=8 {
                let level: Vec<Word> = words.iter().filter(|w| w.len() == n).cloned().collect();
                assert_eq!(level, lang.members(n), "{lang} at {n}");
            }
        }
    }

    #[test]
    fn parse_names() {
        for lang in CorpusLanguage::ALL {
            assert_eq!(lang.id().parse::<CorpusLanguage>().unwrap(), lang);
        }
        assert!("L9".parse::<CorpusLanguage>().is_err());
    }
}

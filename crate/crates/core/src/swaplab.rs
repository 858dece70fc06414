//! Slices of a language at one length, midsection occurrence counts, the
//! swap scan, and the exact parameter chain for the nested-palindrome
//! argument.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::advice::AdviceFunction;
use crate::corpus::CorpusLanguage;
use crate::error::{LabError, Result};
use crate::oracle::{Language, Membership};
use crate::words::{zip_tracks, TrackedWord, Word};

pub const SLICE_COST_LIMIT: u128 = 10_000_000;
pub const SCAN_COST_LIMIT: u128 = 100_000_000;

/// All members of one language at one length, optionally fused with the
/// advice word for that length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slice {
    pub n: usize,
    pub members: Vec<Word>,
    pub origin: String,
    /// The advice word fused under every member, if any.
    pub advice: Option<Word>,
}

impl Slice {
    pub fn new(n: usize, members: Vec<Word>, origin: &str) -> Result<Slice> {
        let mut sorted = members;
        sorted.sort();
        sorted.dedup();
        if let Some(bad) = sorted.iter().find(|w| w.len() != n) {
            return Err(LabError::Precondition(format!("slice member {bad:?} is not of length {n}")));
        }
        Ok(Slice {
            n,
            members: sorted,
            origin: origin.to_string(),
            advice: None,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Lists the length-`n` members of `lang`. With advice, each member `ξ`
/// becomes the fused word `[ξ; h(n)]`.
pub fn build_slice(
    lang: &dyn Language,
    n: usize,
    advice: Option<&AdviceFunction>,
    force: bool,
) -> Result<Slice> {
    if n == 0 {
        return Err(LabError::Precondition("slice length must be at least 1".into()));
    }
    let cost = lang.generation_cost(n);
    if cost > SLICE_COST_LIMIT && !force {
        return Err(LabError::CostGuard {
            what: format!("slice of {} at length {n}", lang.name()),
            needed: cost,
            limit: SLICE_COST_LIMIT,
        });
    }
    let members = lang.members_of_length(n);
    match advice {
        None => Slice::new(n, members, &lang.name()),
        Some(h) => {
            let hn = h.generate(n)?;
            let fused = members
                .iter()
                .map(|xi| zip_tracks(xi, &hn)?.fuse())
                .collect::<Result<Vec<_>>>()?;
            let mut slice = Slice::new(n, fused, &format!("{} with advice {}", lang.name(), h.name()))?;
            slice.advice = Some(hn);
            Ok(slice)
        }
    }
}

/// Accepts fused words `[ξ; a]` with `ξ` in `lang` and `a = h(|ξ|)`: the
/// track language a parallel advice function would induce.
pub struct TrackedOracle<L> {
    pub lang: L,
    pub advice: AdviceFunction,
}

impl<L: Membership> Membership for TrackedOracle<L> {
    fn contains(&self, w: &Word) -> bool {
        let t = TrackedWord::from_fused(w);
        match self.advice.generate(w.len()) {
            Ok(h) => *t.bottom() == h && self.lang.contains(t.top()),
            Err(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub i: usize,
    pub u: Word,
    pub count: usize,
}

/// `|S_{i,u}|` for every offset `i` and every length-`j` factor `u` that
/// occurs there. Absent pairs have count 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceStats {
    pub n: usize,
    pub j: usize,
    pub total: usize,
    pub counts: BTreeMap<(usize, Word), usize>,
}

impl SliceStats {
    pub fn count(&self, i: usize, u: &Word) -> usize {
        self.counts.get(&(i, u.clone())).copied().unwrap_or(0)
    }

    /// Largest count; ties go to the smallest `(i, u)`.
    pub fn max(&self) -> Option<Occurrence> {
        let mut best: Option<Occurrence> = None;
        for ((i, u), &count) in &self.counts {
            if best.as_ref().is_none_or(|b| count > b.count) {
                best = Some(Occurrence { i: *i, u: u.clone(), count });
            }
        }
        best
    }

    pub fn table(&self) -> Vec<Occurrence> {
        self.counts
            .iter()
            .map(|((i, u), &count)| Occurrence { i: *i, u: u.clone(), count })
            .collect()
    }

    /// `Σ_u |S_{i,u}|` for each offset.
    pub fn offset_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.n + 1 - self.j];
        for ((i, _), &c) in &self.counts {
            sums[*i] += c;
        }
        sums
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "j": self.j,
            "total": self.total,
            "max": self.max(),
            "table": self.table(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,u,count\n");
        for occ in self.table() {
            let _ = writeln!(out, "{},{},{}", occ.i, occ.u, occ.count);
        }
        out
    }
}

pub fn slice_stats(s: &Slice, j: usize) -> Result<SliceStats> {
    if j == 0 || j > s.n {
        return Err(LabError::Precondition(format!("need 1 ≤ j ≤ {}, got {j}", s.n)));
    }
    let mut counts = BTreeMap::new();
    for v in &s.members {
        for i in 0..=s.n - j {
            *counts.entry((i, v.factor(i..i + j))).or_insert(0) += 1;
        }
    }
    Ok(SliceStats {
        n: s.n,
        j,
        total: s.len(),
        counts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub j: usize,
    pub bound: u128,
    pub max: Option<Occurrence>,
    pub holds: bool,
    pub violation: Option<Occurrence>,
}

/// Checks `|S_{i,u}| ≤ 2^{n/4 − ⌈j/2⌉}` on the slice of `L₂` at length `n`.
pub fn l2_bound_check(n: usize, j: usize, force: bool) -> Result<BoundReport> {
    if n == 0 || n % 4 != 0 || j == 0 || j > n / 4 {
        return Err(LabError::Precondition(format!(
            "need 4 | n and 1 ≤ j ≤ n/4, got n = {n}, j = {j}"
        )));
    }
    let slice = build_slice(&CorpusLanguage::L2, n, None, force)?;
    let stats = slice_stats(&slice, j)?;
    let exp = (n / 4 - j.div_ceil(2)) as u32;
    let bound = 1u128
        .checked_shl(exp)
        .ok_or_else(|| LabError::Precondition("bound exceeds 128 bits".into()))?;
    let violation = stats
        .table()
        .into_iter()
        .find(|occ| occ.count as u128 > bound);
    Ok(BoundReport {
        n,
        j,
        bound,
        max: stats.max(),
        holds: violation.is_none(),
        violation,
    })
}

/// `(m, n, k, j₀)` for the density argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SwapParams {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub j0: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamChecks {
    /// `2^{n/4} > (2mn²)^4`
    pub size_dominates: bool,
    pub n_multiple_of_16: bool,
    pub k_is_quarter: bool,
    /// `j₀ = 2(⌈log₂(mn²)⌉ + 1)`
    pub j0_formula: bool,
    pub k_ge_2j0: bool,
    /// `2^{j₀/2} ≥ 2mn²`
    pub half_j0_power: bool,
    /// `|S|/(kmn) ≤ |S|/(m(k−j₀+1)(n−j₀+1))` with `|S| = 2^{n/4}`
    pub density_chain: bool,
}

impl ParamChecks {
    pub fn all(&self) -> bool {
        self.size_dominates
            && self.n_multiple_of_16
            && self.k_is_quarter
            && self.j0_formula
            && self.k_ge_2j0
            && self.half_j0_power
            && self.density_chain
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `⌈log₂ x⌉` for `x ≥ 1`, via the bit length of `x − 1`.
pub fn ceil_log2(x: &BigUint) -> u64 {
    assert!(!x.is_zero(), "log of zero");
    (x - BigUint::one()).bits()
}

/// `2^{n/4} > (2mn²)^4`, exactly.
pub fn size_dominates(m: u64, n: u64) -> bool {
    let lhs = BigUint::one() << (n / 4);
    let rhs = (big(2) * big(m) * big(n) * big(n)).pow(4);
    lhs > rhs
}

pub fn j0_for(m: u64, n: u64) -> u64 {
    2 * (ceil_log2(&(big(m) * big(n) * big(n))) + 1)
}

impl SwapParams {
    pub fn checks(&self) -> ParamChecks {
        let SwapParams { m, n, k, j0 } = *self;
        let k_ge_2j0 = k >= 2 * j0;
        let half_j0_power = (BigUint::one() << (j0 / 2)) >= big(2) * big(m) * big(n) * big(n);
        let density_chain = if j0 <= k + 1 && j0 <= n + 1 && m > 0 && k > 0 && n > 0 {
            let size = BigRational::from_integer((BigUint::one() << (n / 4)).into());
            let kmn = BigRational::from_integer((big(k) * big(m) * big(n)).into());
            let per_cell = BigRational::from_integer((big(m) * big(k - j0 + 1) * big(n - j0 + 1)).into());
            per_cell.is_zero() || &size / kmn <= &size / per_cell
        } else {
            false
        };
        ParamChecks {
            size_dominates: size_dominates(m, n),
            n_multiple_of_16: n % 16 == 0,
            k_is_quarter: 4 * k == n,
            j0_formula: j0 == j0_for(m, n),
            k_ge_2j0,
            half_j0_power,
            density_chain,
        }
    }
}

/// Smallest multiple of 16 satisfying `2^{n/4} > (2mn²)^4`, with
/// `k = n/4` and `j₀ = 2(⌈log₂(mn²)⌉ + 1)`.
pub fn choose_params(m: u64) -> Result<SwapParams> {
    if m == 0 {
        return Err(LabError::Precondition("swapping constant m must be at least 1".into()));
    }
    let n = (1u64..)
        .map(|t| 16 * t)
        .find(|&n| size_dominates(m, n))
        .expect("exponential side eventually dominates");
    let params = SwapParams {
        m,
        n,
        k: n / 4,
        j0: j0_for(m, n),
    };
    let checks = params.checks();
    if !checks.all() {
        return Err(LabError::Internal(format!("parameter chain fails: {checks:?}")));
    }
    Ok(params)
}

/// Whether every `|S_{i,u}|` (all `i ≤ n − j₀`, `|u| = j₀`) is strictly
/// below `|S| / (m(k−j₀+1)(n−j₀+1))`, compared exactly.
pub fn density_condition(stats: &SliceStats, params: &SwapParams) -> Result<bool> {
    if stats.j as u64 != params.j0 {
        return Err(LabError::Precondition(format!(
            "stats use j = {}, params use j0 = {}",
            stats.j, params.j0
        )));
    }
    if params.j0 > params.k + 1 || params.j0 > params.n + 1 {
        return Err(LabError::Precondition("j0 exceeds k + 1 or n + 1".into()));
    }
    let denom = big(params.m) * big(params.k - params.j0 + 1) * big(params.n - params.j0 + 1);
    let total = BigUint::from(stats.total);
    Ok(stats
        .counts
        .values()
        .all(|&c| BigUint::from(c) * &denom < total))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapWitness {
    pub i: usize,
    pub j: usize,
    pub x: Word,
    pub y: Word,
    pub swapped_x: Word,
    pub swapped_y: Word,
    pub both_in_language: bool,
    /// Midsection starts at the first letter (`i = 0`).
    pub offset_zero: bool,
}

impl SwapWitness {
    pub fn x_parts(&self) -> (Word, Word, Word) {
        split3(&self.x, self.i, self.j)
    }

    pub fn y_parts(&self) -> (Word, Word, Word) {
        split3(&self.y, self.i, self.j)
    }
}

fn split3(w: &Word, i: usize, j: usize) -> (Word, Word, Word) {
    (w.factor(0..i), w.factor(i..i + j), w.factor(i + j..w.len()))
}

/// Scans all ordered pairs `x ≠ y` of the slice, offsets `i` and lengths
/// `j`, returning every swap `x₁y₂x₃`, `y₁x₂y₃` with `x₂ ≠ y₂` where both
/// words are members. Results are ordered by pair, then `i`, then `j`.
pub fn swap_scan(
    lang: &dyn Membership,
    s: &Slice,
    j_range: RangeInclusive<usize>,
    i_range: Option<RangeInclusive<usize>>,
    force: bool,
) -> Result<Vec<SwapWitness>> {
    let n = s.n;
    if *j_range.start() == 0 || *j_range.end() > n {
        return Err(LabError::Precondition(format!("j range must lie in [1, {n}]")));
    }
    let i_range = i_range.unwrap_or(0..=n.saturating_sub(1));
    let cells: Vec<(usize, usize)> = i_range
        .clone()
        .flat_map(|i| j_range.clone().map(move |j| (i, j)))
        .filter(|&(i, j)| i + j <= n)
        .collect();
    let pairs = (s.len() as u128) * (s.len().saturating_sub(1) as u128);
    let cost = pairs * cells.len() as u128 * 2;
    if cost > SCAN_COST_LIMIT && !force {
        return Err(LabError::CostGuard {
            what: "swap scan".into(),
            needed: cost,
            limit: SCAN_COST_LIMIT,
        });
    }
    let members = &s.members;
    let per_x: Vec<Vec<SwapWitness>> = (0..members.len())
        .into_par_iter()
        .map(|xi| {
            let x = &members[xi];
            let mut found = Vec::new();
            for (yi, y) in members.iter().enumerate() {
                if yi == xi {
                    continue;
                }
                for &(i, j) in &cells {
                    let (x1, x2, x3) = split3(x, i, j);
                    let (y1, y2, y3) = split3(y, i, j);
                    if x2 == y2 {
                        continue;
                    }
                    let swapped_x = Word::join(&[x1, y2, x3]);
                    if !lang.contains(&swapped_x) {
                        continue;
                    }
                    let swapped_y = Word::join(&[y1, x2, y3]);
                    if !lang.contains(&swapped_y) {
                        continue;
                    }
                    found.push(SwapWitness {
                        i,
                        j,
                        x: x.clone(),
                        y: y.clone(),
                        swapped_x,
                        swapped_y,
                        both_in_language: true,
                        offset_zero: i == 0,
                    });
                }
            }
            found
        })
        .collect();
    Ok(per_x.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{grammar_even_palindromes, GrammarLanguage};
    use crate::oracle::Memoized;
    use crate::word;

    fn l2_slice(n: usize) -> Slice {
        build_slice(&CorpusLanguage::L2, n, None, false).unwrap()
    }

    #[test]
    fn slice_sizes() {
        assert_eq!(l2_slice(8).len(), 4);
        assert_eq!(l2_slice(10).len(), 0);
        let pal = GrammarLanguage::new("even-pal", grammar_even_palindromes());
        let s = build_slice(&pal, 4, None, false).unwrap();
        assert_eq!(
            s.members,
            vec![word![0, 0, 0, 0], word![0, 1, 1, 0], word![1, 0, 0, 1], word![1, 1, 1, 1]]
        );
        assert!(build_slice(&CorpusLanguage::L2, 0, None, false).is_err());
    }

    #[test]
    fn slice_guard() {
        let err = build_slice(&CorpusLanguage::L21, 14, None, false).unwrap_err();
        assert!(matches!(err, LabError::CostGuard { .. }));
    }

    #[test]
    fn stats_examples() {
        let s = l2_slice(8);
        let st = slice_stats(&s, 2).unwrap();
        assert_eq!(st.count(3, &word![3, 15]), 2);
        assert!(st.table().iter().filter(|o| o.i == 0).all(|o| o.count == 1));
        assert!(st.offset_sums().iter().all(|&sum| sum == 4));
        assert!(slice_stats(&s, 0).is_err());
        assert!(slice_stats(&s, 9).is_err());
    }

    #[test]
    fn bound_examples() {
        let r = l2_bound_check(8, 2, false).unwrap();
        assert_eq!(r.bound, 2);
        assert_eq!(r.max.unwrap().count, 2);
        assert!(r.holds);
        let r = l2_bound_check(16, 4, false).unwrap();
        assert_eq!(r.bound, 4);
        assert!(r.holds);
        let r = l2_bound_check(8, 1, false).unwrap();
        assert_eq!(r.bound, 2);
        assert!(r.holds && r.max.unwrap().count == 2);
        assert!(l2_bound_check(8, 3, false).is_err());
    }

    #[test]
    fn params_for_m1() {
        let p = choose_params(1).unwrap();
        assert_eq!((p.n, p.k, p.j0), (288, 72, 36));
        assert!(!size_dominates(1, 272));
        assert!(choose_params(0).is_err());
        for m in 1..=10 {
            assert!(choose_params(m).unwrap().checks().all(), "m = {m}");
        }
    }

    #[test]
    fn ceil_log2_small() {
        let expect = [(1u64, 0u64), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)];
        for (x, l) in expect {
            assert_eq!(ceil_log2(&BigUint::from(x)), l, "x = {x}");
        }
    }

    fn tiny_params(j0: u64) -> SwapParams {
        SwapParams { m: 1, n: 4, k: 2, j0 }
    }

    #[test]
    fn density_examples() {
        // |S| = 5, all counts concentrated in one entry
        let concentrated = SliceStats {
            n: 4,
            j: 2,
            total: 5,
            counts: BTreeMap::from([((0, word![1, 1]), 5)]),
        };
        assert!(!density_condition(&concentrated, &tiny_params(2)).unwrap());
        // m(k−j0+1)(n−j0+1) = 1·1·3 = 3 < 5 and every count is 1
        let scattered = SliceStats {
            n: 4,
            j: 2,
            total: 5,
            counts: (0..5).map(|v| ((0, word![v, v]), 1)).collect(),
        };
        assert!(density_condition(&scattered, &tiny_params(2)).unwrap());
        assert!(density_condition(&scattered, &tiny_params(1)).is_err());
    }

    #[test]
    fn swap_positive_control() {
        let pal = GrammarLanguage::new("even-pal", grammar_even_palindromes());
        let s = build_slice(&pal, 4, None, false).unwrap();
        let ws = swap_scan(&pal, &s, 2..=2, Some(1..=1), false).unwrap();
        let hit = ws
            .iter()
            .find(|w| w.x == word![0, 1, 1, 0] && w.y == word![1, 0, 0, 1])
            .expect("witness present");
        assert_eq!(hit.swapped_x, word![0, 0, 0, 0]);
        assert_eq!(hit.swapped_y, word![1, 1, 1, 1]);
        // every witness has its mirror
        for w in &ws {
            assert!(ws.iter().any(|v| v.x == w.y && v.y == w.x && v.i == w.i && v.j == w.j));
        }
    }

    #[test]
    fn no_swap_in_l2_at_8() {
        let s = l2_slice(8);
        let memo = Memoized::new(CorpusLanguage::L2);
        assert!(swap_scan(&memo, &s, 1..=2, None, false).unwrap().is_empty());
    }

    #[test]
    fn equal_midsections_give_nothing() {
        let s = Slice::new(3, vec![word![1, 5, 2], word![2, 5, 1]], "t").unwrap();
        let all = crate::oracle::FnOracle(|_: &Word| true);
        assert!(swap_scan(&all, &s, 1..=1, Some(1..=1), false).unwrap().is_empty());
    }

    #[test]
    fn tracked_swap_keeps_advice() {
        let h = AdviceFunction::from_fn("mixed", |n| (0..n as u64).map(|i| i % 3).collect());
        let s = build_slice(&CorpusLanguage::L2, 8, Some(&h), false).unwrap();
        let everything = crate::oracle::FnOracle(|_: &Word| true);
        let ws = swap_scan(&everything, &s, 1..=2, None, false).unwrap();
        assert!(!ws.is_empty());
        let hn = h.generate(8).unwrap();
        for w in &ws {
            assert_eq!(*TrackedWord::from_fused(&w.swapped_x).bottom(), hn);
            assert_eq!(*TrackedWord::from_fused(&w.swapped_y).bottom(), hn);
        }
        let oracle = TrackedOracle { lang: CorpusLanguage::L2, advice: h };
        assert!(swap_scan(&oracle, &s, 1..=2, None, false).unwrap().is_empty());
    }
}

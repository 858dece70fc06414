//! The acceptance battery behind `langlab suite`. Each criterion returns a
//! pass/fail flag with a JSON detail; failures carry the offending data.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::advice::{
    leq_track_dfa, prefix_pair_decode, prefix_pair_encode, serial_to_parallel_reg, AdviceFunction,
    AdvisedLanguage,
};
use crate::corpus::{
    grammar_ambm_ct, grammar_even_palindromes, grammar_l2_1, grammar_l2_2, intersection_check,
    l2_members, words_over, CorpusLanguage, GrammarLanguage,
};
use crate::grammars::{dfa_accepts, enumerate_language, Dfa};
use crate::oracle::Memoized;
use crate::refuter::{refute_subset, Refutation};
use crate::swaplab::{build_slice, choose_params, size_dominates, l2_bound_check, slice_stats, swap_scan, Slice};
use crate::word;
use crate::words::{scale, Word};

pub const DEFAULT_SEED: u64 = 2011;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

fn result(id: u32, name: &'static str, passed: bool, detail: Value) -> CriterionResult {
    CriterionResult { id, name, passed, detail }
}

pub fn scaling_example() -> CriterionResult {
    let got = scale(&word![1, 2, 1, 1], 3);
    let passed = got.as_ref() == Ok(&word![3, 6, 3, 3]);
    result(1, "scaling example", passed, json!({ "got": got.ok() }))
}

pub fn intersection_identity() -> CriterionResult {
    let e1 = enumerate_language(&grammar_l2_1(), 8);
    let e2 = enumerate_language(&grammar_l2_2(), 8);
    let mut cards = Vec::new();
    let mut mismatch = None;
    for n in 1..=8 {
        let inter: BTreeSet<Word> = e1
            .intersection(&e2)
            .filter(|w| w.len() == n)
            .cloned()
            .collect();
        let l2 = l2_members(n);
        if inter != l2 && mismatch.is_none() {
            mismatch = inter.symmetric_difference(&l2).next().cloned();
        }
        cards.push(inter.len());
    }
    let report = intersection_check(8, false);
    let holds = report.as_ref().is_ok_and(|r| r.holds);
    let passed = mismatch.is_none() && cards == [0, 0, 0, 2, 0, 0, 0, 4] && holds;
    result(
        2,
        "intersection identity up to length 8",
        passed,
        json!({ "cardinalities": cards, "counterexample": mismatch, "cyk_report_holds": holds }),
    )
}

pub fn slice_cardinality() -> CriterionResult {
    let mut sizes = BTreeMap::new();
    let mut passed = true;
    for n in [4usize, 8, 16, 24, 32] {
        let size = build_slice(&CorpusLanguage::L2, n, None, false).map(|s| s.len());
        passed &= size.as_ref().is_ok_and(|&s| s == 1 << (n / 4));
        sizes.insert(n, size.ok());
    }
    result(3, "slice cardinality 2^{n/4}", passed, json!({ "sizes": sizes }))
}

pub fn binding_bound() -> CriterionResult {
    let mut violations = Vec::new();
    let mut checked = 0;
    for n in [8usize, 16, 24] {
        for j in 1..=n / 4 {
            match l2_bound_check(n, j, false) {
                Ok(r) => {
                    checked += 1;
                    if let Some(v) = r.violation {
                        violations.push(json!({ "n": n, "j": j, "i": v.i, "u": v.u, "count": v.count, "bound": r.bound }));
                    }
                }
                Err(e) => violations.push(json!({ "n": n, "j": j, "error": e.to_string() })),
            }
        }
    }
    result(
        4,
        "binding bound",
        violations.is_empty(),
        json!({ "checked": checked, "violations": violations }),
    )
}

pub fn no_swap() -> CriterionResult {
    let oracle = Memoized::new(CorpusLanguage::L2);
    let mut found = Vec::new();
    let mut scanned = BTreeMap::new();
    for n in [8usize, 16, 24] {
        match build_slice(&CorpusLanguage::L2, n, None, false)
            .and_then(|s| swap_scan(&oracle, &s, 1..=n / 4, None, false))
        {
            Ok(ws) => {
                scanned.insert(n, ws.len());
                found.extend(ws.into_iter().take(1).map(|w| json!(w)));
            }
            Err(e) => found.push(json!({ "n": n, "error": e.to_string() })),
        }
    }
    result(
        5,
        "no swap witness in L2 slices",
        found.is_empty(),
        json!({ "witnesses_per_n": scanned, "first_witnesses": found }),
    )
}

pub fn positive_swap_control() -> CriterionResult {
    let pal = GrammarLanguage::new("even-pal", grammar_even_palindromes());
    let ws = build_slice(&pal, 4, None, false).and_then(|s| swap_scan(&pal, &s, 1..=4, None, false));
    let hit = ws.as_ref().ok().and_then(|ws| {
        ws.iter()
            .find(|w| w.x == word![0, 1, 1, 0] && w.y == word![1, 0, 0, 1] && w.i == 1 && w.j == 2)
            .cloned()
    });
    let passed = hit
        .as_ref()
        .is_some_and(|w| w.swapped_x == word![0, 0, 0, 0] && w.swapped_y == word![1, 1, 1, 1]);
    result(
        6,
        "positive swap control on even palindromes",
        passed,
        json!({ "witness": hit, "total_witnesses": ws.map(|w| w.len()).ok() }),
    )
}

pub fn parameter_chain() -> CriterionResult {
    let p = choose_params(1);
    let detail = match &p {
        Ok(p) => json!({
            "n": p.n, "k": p.k, "j0": p.j0,
            "size_dominates_at_288": size_dominates(1, 288),
            "size_dominates_at_272": size_dominates(1, 272),
            "half_j0_power": 1u64 << (p.j0 / 2),
            "two_m_n2": 2 * p.m * p.n * p.n,
            "checks": p.checks(),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let passed = p.is_ok_and(|p| {
        (p.n, p.k, p.j0) == (288, 72, 36)
            && size_dominates(1, 288)
            && !size_dominates(1, 272)
            && p.k == 2 * p.j0
            && (1u64 << (p.j0 / 2)) == 262_144
            && 2 * p.m * p.n * p.n == 165_888
            && p.checks().all()
    });
    result(7, "parameter chain for m = 1", passed, detail)
}

/// Random nonempty subsets of corpus slices.
pub fn random_slices(seed: u64, count: usize) -> Vec<Slice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let lang = *CorpusLanguage::ALL.choose(&mut rng).expect("nonempty");
        let n = rng.gen_range(1..=16);
        let size = lang.count(n);
        if size == 0 || size > 5_000 {
            continue;
        }
        let mut members = lang.members(n);
        members.shuffle(&mut rng);
        members.truncate(rng.gen_range(1..=members.len()));
        out.push(Slice::new(n, members, lang.id()).expect("members have length n"));
    }
    out
}

pub fn partition_identity(seed: u64) -> CriterionResult {
    let slices = random_slices(seed, 200);
    let mut failure = None;
    let mut tables = 0;
    'outer: for s in &slices {
        for j in 1..=s.n {
            let stats = slice_stats(s, j).expect("j within range");
            tables += 1;
            if let Some((i, sum)) = stats
                .offset_sums()
                .into_iter()
                .enumerate()
                .find(|&(_, sum)| sum != s.len())
            {
                failure = Some(json!({ "origin": s.origin, "n": s.n, "j": j, "i": i, "sum": sum, "size": s.len() }));
                break 'outer;
            }
        }
    }
    result(
        8,
        "partition identity on random slices",
        failure.is_none(),
        json!({ "seed": seed, "slices": slices.len(), "tables": tables, "counterexample": failure }),
    )
}

/// A random complete DFA and a random serial advice table up to `max_len`.
pub fn random_dfa_and_table(rng: &mut ChaCha8Rng, max_len: usize) -> (Dfa, AdviceFunction) {
    let alphabet: Vec<u64> = if rng.gen_bool(0.5) { vec![0, 1] } else { vec![0, 1, 2] };
    let states = rng.gen_range(1..=5);
    let delta: Vec<Vec<usize>> = (0..states)
        .map(|_| alphabet.iter().map(|_| rng.gen_range(0..states)).collect())
        .collect();
    let accepting: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    let alpha = alphabet.clone();
    let dfa = Dfa::from_fn(states, alphabet.clone(), 0, accepting, move |q, a| {
        delta[q][alpha.iter().position(|&l| l == a).expect("letter in alphabet")]
    })
    .expect("complete by construction");
    let table: BTreeMap<usize, Word> = (0..=max_len)
        .map(|n| (n, (0..n).map(|_| *alphabet.choose(rng).expect("nonempty")).collect()))
        .collect();
    (dfa, AdviceFunction::from_table("random-table", table))
}

pub fn advice_equivalences(seed: u64) -> CriterionResult {
    let leq = AdvisedLanguage::parallel(Arc::new(leq_track_dfa()), AdviceFunction::leq_parallel());
    let mut leq_mismatch = None;
    let mut leq_checked = 0;
    'leq: for n in 0..=10 {
        for x in words_over(&[0, 1], n) {
            leq_checked += 1;
            let got = leq.member(&x).ok();
            if got != Some(CorpusLanguage::LEq.predicate(&x)) {
                leq_mismatch = Some(x);
                break 'leq;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut conv_mismatch = None;
    let mut conv_checked = 0;
    'dfa: for trial in 0..20 {
        let (m, g) = random_dfa_and_table(&mut rng, 8);
        let conv = match serial_to_parallel_reg(&m, &g) {
            Ok(c) => c,
            Err(e) => {
                conv_mismatch = Some(json!({ "trial": trial, "error": e.to_string() }));
                break;
            }
        };
        let par = AdvisedLanguage::parallel(Arc::new(conv.automaton), conv.advice);
        for n in 1..=8 {
            let gn = g.generate(n).expect("table covers 0..=8");
            for x in words_over(m.alphabet(), n) {
                conv_checked += 1;
                let serial = dfa_accepts(&m, &gn.concat(&x)).ok();
                let parallel = par.member(&x).ok();
                if serial.is_none() || serial != parallel {
                    conv_mismatch = Some(json!({ "trial": trial, "x": x, "serial": serial, "parallel": parallel }));
                    break 'dfa;
                }
            }
        }
    }
    result(
        9,
        "advice equivalences",
        leq_mismatch.is_none() && conv_mismatch.is_none(),
        json!({
            "seed": seed,
            "leq_checked": leq_checked,
            "leq_counterexample": leq_mismatch,
            "conversion_checked": conv_checked,
            "conversion_counterexample": conv_mismatch,
        }),
    )
}

pub fn prefix_free_coding() -> CriterionResult {
    let bits: Vec<Word> = (0..=5).flat_map(|n| words_over(&[0, 1], n)).collect();
    let mut codes = Vec::new();
    let mut roundtrip_failure = None;
    for u in &bits {
        for v in &bits {
            let code = prefix_pair_encode(u, v).expect("binary input");
            if prefix_pair_decode(&code).ok() != Some((u.clone(), v.clone())) {
                roundtrip_failure.get_or_insert_with(|| json!({ "u": u, "v": v }));
            }
            codes.push(code);
        }
    }
    let mut prefix_pair = None;
    'scan: for a in &codes {
        for b in &codes {
            if a != b && a.is_prefix_of(b) {
                prefix_pair = Some(json!({ "prefix": a, "word": b }));
                break 'scan;
            }
        }
    }
    result(
        10,
        "prefix-free pair coding",
        prefix_pair.is_none() && roundtrip_failure.is_none(),
        json!({ "codewords": codes.len(), "prefix_pair": prefix_pair, "roundtrip_failure": roundtrip_failure }),
    )
}

pub fn pumping_refutation() -> CriterionResult {
    match refute_subset(&grammar_ambm_ct(), &CorpusLanguage::L2DoublePrime, 160) {
        Ok(Refutation::Refuted(w)) => {
            let ok = !CorpusLanguage::L2DoublePrime.predicate(&w.violating.1);
            result(11, "pumping refutation against L2''", ok, json!(w))
        }
        Ok(other) => result(11, "pumping refutation against L2''", false, json!(other)),
        Err(e) => result(11, "pumping refutation against L2''", false, json!({ "error": e.to_string() })),
    }
}

pub fn run_suite(seed: u64) -> Vec<CriterionResult> {
    vec![
        scaling_example(),
        intersection_identity(),
        slice_cardinality(),
        binding_bound(),
        no_swap(),
        positive_swap_control(),
        parameter_chain(),
        partition_identity(seed),
        advice_equivalences(seed),
        prefix_free_coding(),
        pumping_refutation(),
    ]
}


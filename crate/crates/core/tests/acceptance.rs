//! Acceptance battery. Runs as a plain binary so each criterion prints a
//! PASS/FAIL line even when the run succeeds. Every criterion is checked
//! twice: by the library routine and by an oracle written here from
//! first principles.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use langlab::advice::{prefix_pair_decode, prefix_pair_encode, serial_to_parallel_reg, AdvisedLanguage};
use langlab::corpus::{grammar_ambm_ct, intersection_check, words_over, CorpusLanguage, A, B, C};
use langlab::grammars::{to_cnf, Cfg, Symbol};
use langlab::refuter::{refute_subset, Refutation};
use langlab::suite::{self, CriterionResult, DEFAULT_SEED};
use langlab::swaplab::{build_slice, slice_stats, Slice};
use langlab::{Letter, Word};

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The nested word built by hand: w, 3·wᴿ, 15·w, 5·wᴿ.
fn nest(w: &[Letter]) -> Vec<Letter> {
    let rev: Vec<Letter> = w.iter().rev().copied().collect();
    let mut out = w.to_vec();
    out.extend(rev.iter().map(|l| 3 * l));
    out.extend(w.iter().map(|l| 15 * l));
    out.extend(rev.iter().map(|l| 5 * l));
    out
}

fn binary_words(k: usize, zero: Letter, one: Letter) -> Vec<Vec<Letter>> {
    (0..1u64 << k)
        .map(|bits| (0..k).map(|b| if bits >> (k - 1 - b) & 1 == 1 { one } else { zero }).collect())
        .collect()
}

fn l2_by_hand(n: usize) -> BTreeSet<Vec<Letter>> {
    if n == 0 || n % 4 != 0 {
        return BTreeSet::new();
    }
    binary_words(n / 4, 1, 2).iter().map(|w| nest(w)).collect()
}

/// Leftmost derivations with a length bound; sound because none of the
/// grammars used here has an erasing rule.
fn derive_naive(g: &Cfg, max_len: usize) -> BTreeSet<Vec<Letter>> {
    let mut seen = HashSet::new();
    let mut stack = vec![vec![Symbol::N(g.start())]];
    let mut out = BTreeSet::new();
    while let Some(form) = stack.pop() {
        if form.len() > max_len || !seen.insert(form.clone()) {
            continue;
        }
        match form.iter().position(|s| matches!(s, Symbol::N(_))) {
            None => {
                out.insert(form.iter().map(|s| if let Symbol::T(l) = s { *l } else { unreachable!() }).collect());
            }
            Some(p) => {
                for prod in g.productions().iter().filter(|r| Symbol::N(r.head) == form[p]) {
                    let mut next = form[..p].to_vec();
                    next.extend(prod.body.iter().copied());
                    next.extend_from_slice(&form[p + 1..]);
                    stack.push(next);
                }
            }
        }
    }
    out
}

fn factor_counts(members: &[Word], j: usize) -> HashMap<(usize, Vec<Letter>), usize> {
    let mut counts = HashMap::new();
    for x in members {
        let s = x.letters();
        for i in 0..=s.len() - j {
            *counts.entry((i, s[i..i + j].to_vec())).or_insert(0) += 1;
        }
    }
    counts
}

fn swap(x: &[Letter], y: &[Letter], i: usize, j: usize) -> Vec<Letter> {
    let mut out = x[..i].to_vec();
    out.extend_from_slice(&y[i..i + j]);
    out.extend_from_slice(&x[i + j..]);
    out
}

fn c1_scaling(lib: &CriterionResult) -> Check {
    let by_hand: Vec<Letter> = [1, 2, 1, 1].iter().map(|l| l * 3).collect();
    ensure(by_hand == [3, 6, 3, 3], || format!("hand scaling gave {by_hand:?}"))?;
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c2_intersection(lib: &CriterionResult) -> Check {
    let g1 = CorpusLanguage::L21.grammar().unwrap();
    let g2 = CorpusLanguage::L22.grammar().unwrap();
    let e1 = derive_naive(&g1, 8);
    let e2 = derive_naive(&g2, 8);
    let mut cards = Vec::new();
    for n in 1..=8 {
        let inter: BTreeSet<Vec<Letter>> =
            e1.intersection(&e2).filter(|w| w.len() == n).cloned().collect();
        ensure(inter == l2_by_hand(n), || format!("length {n}: intersection differs from L2"))?;
        cards.push(inter.len());
    }
    ensure(cards == [0, 0, 0, 2, 0, 0, 0, 4], || format!("cardinalities {cards:?}"))?;
    let r = intersection_check(8, false).map_err(|e| e.to_string())?;
    ensure(r.holds, || format!("library report: {:?}", r.counterexample))?;
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c3_slice_sizes(lib: &CriterionResult) -> Check {
    for n in [4usize, 8, 16, 24, 32] {
        let s = build_slice(&CorpusLanguage::L2, n, None, false).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<Letter>> = s.members.iter().map(|w| w.letters().to_vec()).collect();
        ensure(got.len() == s.len(), || format!("duplicate members at n = {n}"))?;
        ensure(got == l2_by_hand(n), || format!("slice at n = {n} differs from hand construction"))?;
        ensure(s.len() == 1 << (n / 4), || format!("|S| = {} at n = {n}", s.len()))?;
    }
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c4_binding(lib: &CriterionResult) -> Check {
    for n in [8usize, 16, 24] {
        let members: Vec<Word> = l2_by_hand(n).into_iter().map(Word::new).collect();
        for j in 1..=n / 4 {
            let bound = 1usize << (n / 4 - j.div_ceil(2));
            let worst = factor_counts(&members, j).into_values().max().unwrap();
            ensure(worst <= bound, || format!("n = {n}, j = {j}: count {worst} > {bound}"))?;
        }
    }
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c5_no_swap(lib: &CriterionResult) -> Check {
    // A swap keeps the length, so membership in L2 is membership in the slice.
    for n in [8usize, 16] {
        let members: Vec<Vec<Letter>> = l2_by_hand(n).into_iter().collect();
        let set: HashSet<&Vec<Letter>> = members.iter().collect();
        for x in &members {
            for y in &members {
                for j in 1..=n / 4 {
                    for i in 0..=n - j {
                        if x[i..i + j] == y[i..i + j] {
                            continue;
                        }
                        let (a, b) = (swap(x, y, i, j), swap(y, x, i, j));
                        ensure(!(set.contains(&a) && set.contains(&b)), || {
                            format!("swap at n = {n}, i = {i}, j = {j}: {x:?} / {y:?}")
                        })?;
                    }
                }
            }
        }
    }
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c6_positive_control(lib: &CriterionResult) -> Check {
    let pal = |w: &[Letter]| w.len() % 2 == 0 && !w.is_empty() && w.iter().eq(w.iter().rev());
    let (x, y) = ([0, 1, 1, 0], [1, 0, 0, 1]);
    let (a, b) = (swap(&x, &y, 1, 2), swap(&y, &x, 1, 2));
    ensure(pal(&x) && pal(&y) && pal(&a) && pal(&b), || format!("{a:?} / {b:?}"))?;
    ensure(a == [0, 0, 0, 0] && b == [1, 1, 1, 1], || format!("{a:?} / {b:?}"))?;
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c7_params(lib: &CriterionResult) -> Check {
    let size_dominates = |n: u32| (BigUint::from(1u8) << (n / 4)) > BigUint::from(16u8) * BigUint::from(n).pow(8);
    ensure(size_dominates(288) && !size_dominates(272), || "n = 288 is not the least multiple of 16".into())?;
    ensure((16..288).step_by(16).all(|n| !size_dominates(n)), || "a smaller n satisfies the inequality".into())?;
    let mn2: u64 = 288 * 288;
    let ceil_log = 64 - (mn2 - 1).leading_zeros() as u64;
    let (k, j0) = (288 / 4, 2 * (ceil_log + 1));
    ensure(ceil_log == 17 && j0 == 36, || format!("ceil log2(mn^2) = {ceil_log}"))?;
    ensure((1u64 << (j0 / 2)) >= 2 * mn2, || "2^(j0/2) < 2mn^2".into())?;
    ensure(k >= 2 * j0, || "k < 2 j0".into())?;
    let lib_triple = (&lib.detail["n"], &lib.detail["k"], &lib.detail["j0"]);
    ensure(lib_triple == (&288.into(), &k.into(), &j0.into()), || format!("library chose {lib_triple:?}"))?;
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c8_partition(lib: &CriterionResult) -> Check {
    let slices: Vec<Slice> = suite::random_slices(DEFAULT_SEED, 200);
    ensure(slices.len() == 200, || "wrong slice count".into())?;
    for s in &slices {
        for j in 1..=s.n {
            let stats = slice_stats(s, j).map_err(|e| e.to_string())?;
            let by_hand = factor_counts(&s.members, j);
            for i in 0..=s.n - j {
                let sum: usize = by_hand.iter().filter(|((o, _), _)| *o == i).map(|(_, c)| c).sum();
                ensure(sum == s.len(), || format!("{} n = {}, j = {j}, i = {i}", s.origin, s.n))?;
            }
            ensure(by_hand.len() == stats.counts.len(), || "table sizes differ".into())?;
            for ((i, u), c) in &by_hand {
                ensure(stats.count(*i, &Word::new(u.clone())) == *c, || format!("count at i = {i}"))?;
            }
        }
    }
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c9_advice(lib: &CriterionResult) -> Check {
    let leq = |w: &[Letter]| {
        let z = w.iter().take_while(|&&l| l == 0).count();
        !w.is_empty() && 2 * z == w.len() && w[z..].iter().all(|&l| l == 1)
    };
    let advised = AdvisedLanguage::parallel(
        Arc::new(langlab::advice::leq_track_dfa()),
        langlab::advice::AdviceFunction::leq_parallel(),
    );
    for n in 0..=10 {
        for x in words_over(&[0, 1], n) {
            let got = advised.member(&x).map_err(|e| e.to_string())?;
            ensure(got == leq(x.letters()), || format!("L_eq disagrees on {x}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 0x9e37);
    for trial in 0..20 {
        let (m, g) = suite::random_dfa_and_table(&mut rng, 8);
        let conv = serial_to_parallel_reg(&m, &g).map_err(|e| e.to_string())?;
        let par = AdvisedLanguage::parallel(Arc::new(conv.automaton), conv.advice);
        for n in 1..=8 {
            let gn = g.generate(n).map_err(|e| e.to_string())?;
            for x in words_over(m.alphabet(), n) {
                let mut q = m.start();
                for l in gn.iter().chain(x.iter()) {
                    q = m.step(q, l).map_err(|e| e.to_string())?;
                }
                let got = par.member(&x).map_err(|e| e.to_string())?;
                ensure(got == m.is_accepting(q), || format!("trial {trial}: disagreement on {x}"))?;
            }
        }
    }
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c10_prefix_code(lib: &CriterionResult) -> Check {
    let bits: Vec<Vec<Letter>> = (0..=5).flat_map(|k| binary_words(k, 0, 1)).collect();
    let mut codes = Vec::new();
    for u in &bits {
        for v in &bits {
            // doubled letters, then the separator 01
            let mut want: Vec<Letter> = u.iter().flat_map(|&l| [l, l]).collect();
            want.extend([0, 1]);
            want.extend(v.iter().flat_map(|&l| [l, l]));
            want.extend([0, 1]);
            let code = prefix_pair_encode(&Word::new(u.clone()), &Word::new(v.clone())).map_err(|e| e.to_string())?;
            ensure(code.letters() == want.as_slice(), || format!("code of ({u:?}, {v:?})"))?;
            let back = prefix_pair_decode(&code).map_err(|e| e.to_string())?;
            ensure(back.0.letters() == u.as_slice() && back.1.letters() == v.as_slice(), || "decode".into())?;
            codes.push(want);
        }
    }
    // In lexicographic order a word's extensions follow it directly.
    codes.sort();
    ensure(codes.windows(2).all(|p| !p[1].starts_with(&p[0])), || "code is not prefix-free".into())?;
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn c11_pumping(lib: &CriterionResult) -> Check {
    let blocks = |w: &[Letter]| -> Option<(usize, usize, usize)> {
        let a = w.iter().take_while(|&&l| l == A).count();
        let b = w[a..].iter().take_while(|&&l| l == B).count();
        let c = w[a + b..].iter().take_while(|&&l| l == C).count();
        (a + b + c == w.len()).then_some((a, b, c))
    };
    let in_g = |w: &[Letter]| blocks(w).is_some_and(|(a, b, c)| a == b && a >= 1 && c >= 1);
    let in_p = |w: &[Letter]| blocks(w).is_some_and(|(a, b, c)| a == b && c == 2 * a && a >= 1);
    let g = grammar_ambm_ct();
    let p = to_cnf(&g).pumping_constant();
    let w = match refute_subset(&g, &CorpusLanguage::L2DoublePrime, 160).map_err(|e| e.to_string())? {
        Refutation::Refuted(w) => w,
        other => return Err(format!("no refutation: {other:?}")),
    };
    let d = &w.decomposition;
    let z: Vec<Letter> = [&d.u, &d.v, &d.w, &d.x, &d.y].iter().flat_map(|p| p.iter()).collect();
    ensure(z == w.z.letters(), || "decomposition does not spell z".into())?;
    ensure(in_g(&z) && in_p(&z), || "z is not in L(G) and P".into())?;
    ensure(z.len() as u128 >= p && w.pumping_constant == p, || "z shorter than p".into())?;
    ensure(d.v.len() + d.x.len() >= 1, || "empty pump".into())?;
    ensure((d.v.len() + d.w.len() + d.x.len()) as u128 <= p, || "|vwx| > p".into())?;
    let (i, ref bad) = w.violating;
    let mut pumped: Vec<Letter> = d.u.letters().to_vec();
    for _ in 0..i {
        pumped.extend(d.v.iter());
    }
    pumped.extend(d.w.iter());
    for _ in 0..i {
        pumped.extend(d.x.iter());
    }
    pumped.extend(d.y.iter());
    ensure(pumped == bad.letters(), || "violating word is not the pump".into())?;
    ensure(in_g(&pumped) && !in_p(&pumped), || "pumped word does not violate".into())?;
    ensure(lib.passed, || format!("library: {}", lib.detail))
}

fn main() {
    let library = suite::run_suite(DEFAULT_SEED);
    let oracles: [fn(&CriterionResult) -> Check; 11] = [
        c1_scaling,
        c2_intersection,
        c3_slice_sizes,
        c4_binding,
        c5_no_swap,
        c6_positive_control,
        c7_params,
        c8_partition,
        c9_advice,
        c10_prefix_code,
        c11_pumping,
    ];
    let mut failed = 0;
    for (lib, oracle) in library.iter().zip(oracles) {
        match oracle(lib) {
            Ok(()) => println!("PASS  criterion {:>2}: {}", lib.id, lib.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {} ({why})", lib.id, lib.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", library.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

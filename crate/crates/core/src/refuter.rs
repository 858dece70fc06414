//! Pumping decompositions extracted from CNF derivation trees, and
//! refutation of claims `L(G) ⊆ P` by pumping a member of `L(G) ∩ P` out
//! of `P`.

use serde::Serialize;

use crate::error::{LabError, Result};
use crate::grammars::{cyk_member, cyk_parse, to_cnf, Cfg, CnfGrammar, CnfLengthTable};
use crate::oracle::Membership;
use crate::words::Word;

/// Exponents tried when pumping.
pub const PUMP_EXPONENTS: [usize; 4] = [0, 2, 3, 4];
/// Exponents every extracted decomposition is verified on.
pub const VERIFIED_EXPONENTS: [usize; 3] = [0, 2, 3];
pub const ENUMERATION_LIMIT: u128 = 5_000_000;

/// `z = u v w x y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub u: Word,
    pub v: Word,
    pub w: Word,
    pub x: Word,
    pub y: Word,
}

impl Decomposition {
    /// `u vⁱ w xⁱ y`
    pub fn pump(&self, i: usize) -> Word {
        let mut parts = vec![&self.u];
        parts.extend(std::iter::repeat_n(&self.v, i));
        parts.push(&self.w);
        parts.extend(std::iter::repeat_n(&self.x, i));
        parts.push(&self.y);
        Word::join(parts)
    }

    pub fn word(&self) -> Word {
        self.pump(1)
    }
}

/// Finds `z = uvwxy` with `|vx| ≥ 1` and `|vwx| ≤ 2^|V|`.
///
/// Walks the leftmost longest path of the leftmost derivation tree from
/// the leaf upwards and stops at the first nonterminal that repeats one
/// below it; that pair spans `vwx` (upper node) and `w` (lower node).
pub fn find_decomposition(g: &CnfGrammar, z: &Word) -> Result<Decomposition> {
    let p = g.pumping_constant();
    if (z.len() as u128) < p {
        return Err(LabError::Precondition(format!(
            "|z| = {} is below the pumping constant {p}",
            z.len()
        )));
    }
    let tree = cyk_parse(g, z)
        .ok_or_else(|| LabError::Precondition(format!("{z:?} is not in the language")))?;
    let path = tree.longest_path();
    let labels: Vec<usize> = path.iter().map(|&n| tree.nodes[n].label).collect();
    let (upper, lower) = (0..path.len())
        .rev()
        .find_map(|top| {
            (top + 1..path.len())
                .find(|&below| labels[below] == labels[top])
                .map(|below| (path[top], path[below]))
        })
        .ok_or_else(|| LabError::Internal("long word without a repeated nonterminal".into()))?;
    let (a, b) = tree.nodes[upper].span;
    let (c, d) = tree.nodes[lower].span;
    let dec = Decomposition {
        u: z.factor(0..a),
        v: z.factor(a..c),
        w: z.factor(c..d),
        x: z.factor(d..b),
        y: z.factor(b..z.len()),
    };
    if dec.v.len() + dec.x.len() == 0 || ((dec.v.len() + dec.w.len() + dec.x.len()) as u128) > p {
        return Err(LabError::Internal(format!("decomposition breaks the bounds: {dec:?}")));
    }
    for i in VERIFIED_EXPONENTS {
        let pumped = dec.pump(i);
        if !cyk_member(g, &pumped) {
            return Err(LabError::Internal(format!("pumped word {pumped:?} (i = {i}) left the language")));
        }
    }
    Ok(dec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PumpWitness {
    pub z: Word,
    pub decomposition: Decomposition,
    pub pumping_constant: u128,
    /// Every pumped word tried, in exponent order, up to the violation.
    pub pumped: Vec<(usize, Word)>,
    /// First pumped word that is in `L(G)` but fails the predicate.
    pub violating: (usize, Word),
}

impl PumpWitness {
    /// Re-checks the certificate from scratch.
    pub fn replay(&self, g: &CnfGrammar, predicate: &dyn Membership) -> bool {
        let d = &self.decomposition;
        d.word() == self.z
            && !d.v.is_empty() | !d.x.is_empty()
            && (d.v.len() + d.w.len() + d.x.len()) as u128 <= g.pumping_constant()
            && cyk_member(g, &self.z)
            && predicate.contains(&self.z)
            && self.pumped.iter().all(|(i, w)| d.pump(*i) == *w && cyk_member(g, w))
            && d.pump(self.violating.0) == self.violating.1
            && cyk_member(g, &self.violating.1)
            && !predicate.contains(&self.violating.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)] // built once per search
pub enum Refutation {
    Refuted(PumpWitness),
    Inconclusive { examined: usize },
}

/// Searches `z ∈ L(g)` with `p ≤ |z| ≤ search_len` and `P(z)`, pumps it
/// with each of [`PUMP_EXPONENTS`], and returns the first pumped word that
/// stays in `L(g)` but leaves `P`. `Inconclusive` means no such word was
/// found in the search window.
pub fn refute_subset(g: &Cfg, predicate: &dyn Membership, search_len: usize) -> Result<Refutation> {
    refute_subset_with_limit(g, predicate, search_len, ENUMERATION_LIMIT)
}

pub fn refute_subset_with_limit(
    g: &Cfg,
    predicate: &dyn Membership,
    search_len: usize,
    limit: u128,
) -> Result<Refutation> {
    let cnf = to_cnf(g);
    let p = cnf.pumping_constant();
    if (search_len as u128) < p {
        return Err(LabError::Precondition(format!(
            "search length {search_len} is below the pumping constant {p}"
        )));
    }
    let mut table = CnfLengthTable::new(&cnf, limit);
    let mut examined = 0;
    for len in p as usize..=search_len {
        let candidates: Vec<Word> = table.start_words(len)?.to_vec();
        for z in candidates {
            examined += 1;
            if !predicate.contains(&z) {
                continue;
            }
            let dec = find_decomposition(&cnf, &z)?;
            let mut pumped = Vec::new();
            for i in PUMP_EXPONENTS {
                let word = dec.pump(i);
                if !cyk_member(&cnf, &word) {
                    return Err(LabError::Internal(format!("pumped word {word:?} left L(G)")));
                }
                pumped.push((i, word.clone()));
                if !predicate.contains(&word) {
                    let witness = PumpWitness {
                        z,
                        decomposition: dec,
                        pumping_constant: p,
                        pumped,
                        violating: (i, word),
                    };
                    if !witness.replay(&cnf, predicate) {
                        return Err(LabError::Internal("witness failed replay".into()));
                    }
                    return Ok(Refutation::Refuted(witness));
                }
            }
        }
    }
    Ok(Refutation::Inconclusive { examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{grammar_a_plus, grammar_ambm_ct, grammar_anbn, CorpusLanguage, A, B};
    use crate::grammars::{t, CfgBuilder};
    use crate::oracle::FnOracle;

    #[test]
    fn anbn_pumps_both_sides() {
        let g = to_cnf(&grammar_anbn());
        let p = g.pumping_constant() as usize;
        let z = Word::repeat(A, p).concat(&Word::repeat(B, p));
        let d = find_decomposition(&g, &z).unwrap();
        assert!(!d.v.is_empty() && d.v.iter().all(|l| l == A));
        assert_eq!(d.v.len(), d.x.len());
        assert!(d.x.iter().all(|l| l == B));
        for i in [0, 2] {
            assert!(cyk_member(&g, &d.pump(i)));
        }
    }

    #[test]
    fn too_short_or_foreign() {
        let single = to_cnf(&CfgBuilder::new("S").rule("S", [t(A)]).build());
        assert_eq!(single.pumping_constant(), 2);
        assert!(find_decomposition(&single, &Word::new(vec![A])).is_err());
        let g = to_cnf(&grammar_anbn());
        let p = g.pumping_constant() as usize;
        assert!(find_decomposition(&g, &Word::repeat(A, 2 * p)).is_err());
    }

    #[test]
    fn unary_closed_under_pumping() {
        let g = to_cnf(&grammar_a_plus());
        let z = Word::repeat(A, g.pumping_constant() as usize);
        let d = find_decomposition(&g, &z).unwrap();
        for i in 0..5 {
            assert!(cyk_member(&g, &d.pump(i)));
        }
    }

    #[test]
    fn ambmct_against_l2pp() {
        let outcome = refute_subset(&grammar_ambm_ct(), &CorpusLanguage::L2DoublePrime, 160).unwrap();
        let Refutation::Refuted(w) = outcome else { panic!("expected a witness") };
        assert!(w.replay(&to_cnf(&grammar_ambm_ct()), &CorpusLanguage::L2DoublePrime));
        assert!(!CorpusLanguage::L2DoublePrime.predicate(&w.violating.1));
    }

    #[test]
    fn parity_predicate() {
        let even = FnOracle(|w: &Word| w.len() % 2 == 0);
        let Refutation::Refuted(w) = refute_subset(&grammar_a_plus(), &even, 8).unwrap() else {
            panic!("expected a witness")
        };
        assert_eq!(w.z.len() % 2, 0);
        assert_eq!(w.violating.1.len() % 2, 1);
    }

    #[test]
    fn finite_language_is_inconclusive() {
        let g = CfgBuilder::new("S").rule("S", [t(A)]).build();
        let anything = FnOracle(|_: &Word| true);
        assert_eq!(
            refute_subset(&g, &anything, 6).unwrap(),
            Refutation::Inconclusive { examined: 0 }
        );
        assert!(refute_subset(&g, &anything, 1).is_err());
    }
}

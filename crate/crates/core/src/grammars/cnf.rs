use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::cfg::{Cfg, Production, Symbol};
use crate::words::Letter;

/// A grammar in Chomsky normal form: every rule is `A -> B C` or
/// `A -> a`, plus an optional `Start -> λ` flag. When the flag is set
/// the start symbol occurs in no rule body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfGrammar {
    names: Vec<String>,
    start: usize,
    binary: Vec<(usize, usize, usize)>,
    unary: Vec<(usize, Letter)>,
    accepts_empty: bool,
    terminals: BTreeSet<Letter>,
}

impl CnfGrammar {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nonterminal_count(&self) -> usize {
        self.names.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn binary_rules(&self) -> &[(usize, usize, usize)] {
        &self.binary
    }

    pub fn terminal_rules(&self) -> &[(usize, Letter)] {
        &self.unary
    }

    pub fn accepts_empty(&self) -> bool {
        self.accepts_empty
    }

    pub fn terminals(&self) -> &BTreeSet<Letter> {
        &self.terminals
    }

    pub fn is_empty_language(&self) -> bool {
        self.binary.is_empty() && self.unary.is_empty() && !self.accepts_empty
    }

    /// Bar-Hillel constant `2^|V|`, saturating at `u128::MAX`.
    pub fn pumping_constant(&self) -> u128 {
        let v = self.nonterminal_count() as u32;
        if v >= 128 {
            u128::MAX
        } else {
            1u128 << v
        }
    }

    /// Checks the normal-form shape invariants.
    pub fn check_shape(&self) -> Result<(), String> {
        let v = self.names.len();
        for &(a, b, c) in &self.binary {
            if a >= v || b >= v || c >= v {
                return Err(format!("rule ({a},{b},{c}) references an undeclared nonterminal"));
            }
            if self.accepts_empty && (b == self.start || c == self.start) {
                return Err("start symbol occurs in a body while Start -> λ is present".into());
            }
        }
        for &(a, l) in &self.unary {
            if a >= v || !self.terminals.contains(&l) {
                return Err(format!("terminal rule ({a},{l}) is malformed"));
            }
        }
        Ok(())
    }

    /// The same grammar as a general [`Cfg`].
    pub fn to_cfg(&self) -> Cfg {
        let mut prods: Vec<Production> = self
            .binary
            .iter()
            .map(|&(a, b, c)| Production {
                head: a,
                body: vec![Symbol::N(b), Symbol::N(c)],
            })
            .chain(self.unary.iter().map(|&(a, l)| Production {
                head: a,
                body: vec![Symbol::T(l)],
            }))
            .collect();
        if self.accepts_empty {
            prods.push(Production {
                head: self.start,
                body: vec![],
            });
        }
        Cfg::from_parts(self.names.clone(), prods, self.start).expect("CNF indices are valid")
    }
}

fn fresh(names: &mut Vec<String>, taken: &mut HashSet<String>, base: &str) -> usize {
    let mut k = 0usize;
    let name = loop {
        let candidate = format!("{base}_{k}");
        if !taken.contains(&candidate) {
            break candidate;
        }
        k += 1;
    };
    taken.insert(name.clone());
    names.push(name);
    names.len() - 1
}

/// Converts `g` to Chomsky normal form.
///
/// Steps: fresh start (only when the old start occurs in a body), λ-rule
/// elimination, unit-rule elimination, removal of useless nonterminals,
/// binarisation of long bodies, then terminal lifting in binary bodies.
/// An empty language yields a grammar with no rules.
pub fn to_cnf(g: &Cfg) -> CnfGrammar {
    let mut names: Vec<String> = g.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut prods: BTreeSet<(usize, Vec<Symbol>)> = g
        .productions()
        .iter()
        .map(|p| (p.head, p.body.clone()))
        .collect();

    let mut start = g.start();
    let start_in_body = prods
        .iter()
        .any(|(_, body)| body.contains(&Symbol::N(start)));
    if start_in_body {
        let base = names[start].clone();
        let s0 = fresh(&mut names, &mut taken, &base);
        prods.insert((s0, vec![Symbol::N(start)]));
        start = s0;
    }

    // λ-rules
    let nullable = nullable_set(&prods, names.len());
    let accepts_empty = nullable[start];
    let mut expanded = BTreeSet::new();
    for (head, body) in &prods {
        let optional: Vec<usize> = body
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Symbol::N(n) if nullable[*n]))
            .map(|(i, _)| i)
            .collect();
        for mask in 0u64..(1u64 << optional.len()) {
            let kept: Vec<Symbol> = body
                .iter()
                .enumerate()
                .filter(|(i, _)| match optional.iter().position(|o| o == i) {
                    Some(bit) => mask & (1 << bit) == 0,
                    None => true,
                })
                .map(|(_, s)| *s)
                .collect();
            if !kept.is_empty() {
                expanded.insert((*head, kept));
            }
        }
    }
    let prods = expanded;

    // unit rules
    let unit_reach = unit_closure(&prods, names.len());
    let mut no_units = BTreeSet::new();
    for (a, reach) in unit_reach.iter().enumerate() {
        for &b in reach {
            for (head, body) in &prods {
                if *head == b && !matches!(body.as_slice(), [Symbol::N(_)]) {
                    no_units.insert((a, body.clone()));
                }
            }
        }
    }
    let prods = remove_useless(no_units, names.len(), start);

    // long bodies
    let mut binarised = BTreeSet::new();
    for (head, body) in prods {
        if body.len() <= 2 {
            binarised.insert((head, body));
            continue;
        }
        let base = names[head].clone();
        let mut lhs = head;
        for sym in &body[..body.len() - 2] {
            let next = fresh(&mut names, &mut taken, &base);
            binarised.insert((lhs, vec![*sym, Symbol::N(next)]));
            lhs = next;
        }
        binarised.insert((lhs, body[body.len() - 2..].to_vec()));
    }

    // terminals inside binary bodies
    let mut lifted: BTreeMap<Letter, usize> = BTreeMap::new();
    let mut binary = BTreeSet::new();
    let mut unary = BTreeSet::new();
    for (head, body) in binarised {
        match body.as_slice() {
            [Symbol::T(l)] => {
                unary.insert((head, *l));
            }
            [x, y] => {
                let mut lift = |s: Symbol| match s {
                    Symbol::N(n) => n,
                    Symbol::T(l) => *lifted
                        .entry(l)
                        .or_insert_with(|| fresh(&mut names, &mut taken, &format!("T{l}"))),
                };
                let (b, c) = (lift(*x), lift(*y));
                binary.insert((head, b, c));
            }
            _ => unreachable!("unit and λ bodies were eliminated"),
        }
    }
    for (&l, &n) in &lifted {
        unary.insert((n, l));
    }

    compact(names, start, binary, unary, accepts_empty)
}

fn nullable_set(prods: &BTreeSet<(usize, Vec<Symbol>)>, count: usize) -> Vec<bool> {
    let mut nullable = vec![false; count];
    loop {
        let mut changed = false;
        for (head, body) in prods {
            if !nullable[*head]
                && body.iter().all(|s| matches!(s, Symbol::N(n) if nullable[*n]))
            {
                nullable[*head] = true;
                changed = true;
            }
        }
        if !changed {
            return nullable;
        }
    }
}

/// For every nonterminal, the set reachable through unit rules (itself included).
fn unit_closure(prods: &BTreeSet<(usize, Vec<Symbol>)>, count: usize) -> Vec<BTreeSet<usize>> {
    let mut reach: Vec<BTreeSet<usize>> = (0..count).map(|a| BTreeSet::from([a])).collect();
    loop {
        let mut changed = false;
        for (head, body) in prods {
            if let [Symbol::N(b)] = body.as_slice() {
                for r in reach.iter_mut() {
                    if r.contains(head) && r.insert(*b) {
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return reach;
        }
    }
}

fn remove_useless(
    prods: BTreeSet<(usize, Vec<Symbol>)>,
    count: usize,
    start: usize,
) -> BTreeSet<(usize, Vec<Symbol>)> {
    let mut generating = vec![false; count];
    loop {
        let mut changed = false;
        for (head, body) in &prods {
            if !generating[*head]
                && body
                    .iter()
                    .all(|s| matches!(s, Symbol::T(_)) || matches!(s, Symbol::N(n) if generating[*n]))
            {
                generating[*head] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let productive: Vec<_> = prods
        .into_iter()
        .filter(|(head, body)| {
            generating[*head]
                && body.iter().all(|s| match s {
                    Symbol::N(n) => generating[*n],
                    Symbol::T(_) => true,
                })
        })
        .collect();
    let mut reachable = vec![false; count];
    reachable[start] = true;
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        for (head, body) in &productive {
            if *head != a {
                continue;
            }
            for s in body {
                if let Symbol::N(n) = s {
                    if !reachable[*n] {
                        reachable[*n] = true;
                        stack.push(*n);
                    }
                }
            }
        }
    }
    productive
        .into_iter()
        .filter(|(head, _)| reachable[*head])
        .collect()
}

/// Drops nonterminals that no rule mentions (the start always stays) and
/// renumbers the rest in first-appearance order.
fn compact(
    names: Vec<String>,
    start: usize,
    binary: BTreeSet<(usize, usize, usize)>,
    unary: BTreeSet<(usize, Letter)>,
    accepts_empty: bool,
) -> CnfGrammar {
    let mut order = vec![start];
    let mut seen = HashSet::from([start]);
    let mut visit = |n: usize, order: &mut Vec<usize>| {
        if seen.insert(n) {
            order.push(n);
        }
    };
    for &(a, b, c) in &binary {
        visit(a, &mut order);
        visit(b, &mut order);
        visit(c, &mut order);
    }
    for &(a, _) in &unary {
        visit(a, &mut order);
    }
    let remap: BTreeMap<usize, usize> = order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let mut binary: Vec<_> = binary
        .into_iter()
        .map(|(a, b, c)| (remap[&a], remap[&b], remap[&c]))
        .collect();
    binary.sort_unstable();
    let mut unary: Vec<_> = unary.into_iter().map(|(a, l)| (remap[&a], l)).collect();
    unary.sort_unstable();
    let terminals = unary.iter().map(|&(_, l)| l).collect();
    CnfGrammar {
        names: order.iter().map(|&old| names[old].clone()).collect(),
        start: 0,
        binary,
        unary,
        accepts_empty,
        terminals,
    }
}

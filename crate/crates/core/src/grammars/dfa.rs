use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::oracle::Membership;
use crate::words::{Letter, Word};

pub type State = usize;

/// A complete deterministic finite automaton. States are `0..state_count()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    names: Vec<String>,
    alphabet: Vec<Letter>,
    column: BTreeMap<Letter, usize>,
    // delta[state][column]
    delta: Vec<Vec<State>>,
    start: State,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds an automaton; every `(state, letter)` pair must have exactly
    /// one transition.
    pub fn new(
        names: Vec<String>,
        alphabet: impl IntoIterator<Item = Letter>,
        start: State,
        accepting: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = (State, Letter, State)>,
    ) -> Result<Dfa> {
        let alphabet: Vec<Letter> = alphabet.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let column: BTreeMap<Letter, usize> =
            alphabet.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let count = names.len();
        if start >= count {
            return Err(LabError::Automaton(format!("start state {start} is undeclared")));
        }
        let mut delta = vec![vec![None; alphabet.len()]; count];
        for (from, letter, to) in transitions {
            if from >= count || to >= count {
                return Err(LabError::Automaton(format!("transition {from} -> {to} uses an undeclared state")));
            }
            let col = *column.get(&letter).ok_or(LabError::ForeignLetter { letter })?;
            match delta[from][col] {
                Some(prev) if prev != to => {
                    return Err(LabError::Automaton(format!(
                        "state {} has two transitions on {letter}",
                        names[from]
                    )))
                }
                _ => delta[from][col] = Some(to),
            }
        }
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(q, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(col, to)| {
                        to.ok_or_else(|| {
                            LabError::Automaton(format!(
                                "state {} has no transition on {}",
                                names[q], alphabet[col]
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut acc = vec![false; count];
        for q in accepting {
            if q >= count {
                return Err(LabError::Automaton(format!("accepting state {q} is undeclared")));
            }
            acc[q] = true;
        }
        Ok(Dfa {
            names,
            alphabet,
            column,
            delta,
            start,
            accepting: acc,
        })
    }

    /// Builds an automaton with numbered states from a transition function.
    pub fn from_fn(
        state_count: usize,
        alphabet: impl IntoIterator<Item = Letter>,
        start: State,
        accepting: impl IntoIterator<Item = State>,
        step: impl Fn(State, Letter) -> State,
    ) -> Result<Dfa> {
        let alphabet: Vec<Letter> = alphabet.into_iter().collect();
        let transitions: Vec<_> = (0..state_count)
            .flat_map(|q| alphabet.iter().map(move |&a| (q, a)))
            .map(|(q, a)| (q, a, step(q, a)))
            .collect();
        Dfa::new(
            (0..state_count).map(|q| format!("q{q}")).collect(),
            alphabet,
            start,
            accepting,
            transitions,
        )
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn start(&self) -> State {
        self.start
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: State, letter: Letter) -> Result<State> {
        let col = *self.column.get(&letter).ok_or(LabError::ForeignLetter { letter })?;
        Ok(self.delta[q][col])
    }

    pub fn from_json(text: &str) -> Result<Dfa> {
        let doc: DfaDocument =
            serde_json::from_str(text).map_err(|e| LabError::Io(format!("DFA document: {e}")))?;
        doc.into_dfa()
    }

    pub fn to_document(&self) -> DfaDocument {
        let name = |q: State| StateName::Name(self.names[q].clone());
        DfaDocument {
            states: (0..self.state_count()).map(name).collect(),
            alphabet: self.alphabet.clone(),
            start: name(self.start),
            accepting: (0..self.state_count())
                .filter(|&q| self.accepting[q])
                .map(name)
                .collect(),
            transitions: (0..self.state_count())
                .flat_map(|q| {
                    self.alphabet
                        .iter()
                        .enumerate()
                        .map(move |(col, &a)| (name(q), a, name(self.delta[q][col])))
                })
                .collect(),
        }
    }
}

/// Folds the transition map over `w` starting at `from`.
pub fn dfa_run(m: &Dfa, from: State, w: &Word) -> Result<State> {
    w.iter().try_fold(from, |q, a| m.step(q, a))
}

pub fn dfa_accepts(m: &Dfa, w: &Word) -> Result<bool> {
    dfa_run(m, m.start, w).map(|q| m.accepting[q])
}

impl Membership for Dfa {
    fn contains(&self, w: &Word) -> bool {
        dfa_accepts(self, w).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateName {
    Number(u64),
    Name(String),
}

impl StateName {
    fn key(&self) -> String {
        match self {
            StateName::Number(n) => n.to_string(),
            StateName::Name(s) => s.clone(),
        }
    }
}

/// JSON shape: `{states, alphabet, start, accepting, transitions: [[from, letter, to], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaDocument {
    pub states: Vec<StateName>,
    pub alphabet: Vec<Letter>,
    pub start: StateName,
    pub accepting: Vec<StateName>,
    pub transitions: Vec<(StateName, Letter, StateName)>,
}

impl DfaDocument {
    pub fn into_dfa(self) -> Result<Dfa> {
        let names: Vec<String> = self.states.iter().map(StateName::key).collect();
        let index: BTreeMap<String, State> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        if index.len() != names.len() {
            return Err(LabError::Automaton("duplicate state name".into()));
        }
        let lookup = |s: &StateName| {
            index
                .get(&s.key())
                .copied()
                .ok_or_else(|| LabError::Automaton(format!("unknown state `{}`", s.key())))
        };
        let start = lookup(&self.start)?;
        let accepting = self.accepting.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        let transitions = self
            .transitions
            .iter()
            .map(|(f, a, t)| Ok((lookup(f)?, *a, lookup(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Dfa::new(names, self.alphabet, start, accepting, transitions)
    }
}

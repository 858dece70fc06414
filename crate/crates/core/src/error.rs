use thiserror::Error;

use crate::words::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("scaling factor must be at least 1")]
    ZeroScale,
    #[error("letter 0 is reserved for advice padding and cannot be scaled")]
    ReservedLetter,
    #[error("nest_l2 needs a nonempty word over {{1,2}}, got [{0}]")]
    NotNestable(Word),
    #[error("track lengths differ: top has {top}, bottom has {bottom}")]
    TrackMismatch { top: usize, bottom: usize },
    #[error("letter {0} does not fit in one track of a fused letter")]
    TrackOverflow(u64),
    #[error("invalid grammar: {0}")]
    Grammar(String),
    #[error("grammar parse error on line {line}: {msg}")]
    GrammarSyntax { line: usize, msg: String },
    #[error("invalid automaton: {0}")]
    Automaton(String),
    #[error("letter {letter} is not in the automaton alphabet")]
    ForeignLetter { letter: u64 },
    #[error("advice at length {n}: {msg}")]
    Advice { n: usize, msg: String },
    #[error("malformed pair code: {0}")]
    PairCode(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cost guard: {what} needs {needed} steps, limit is {limit} (use force to override)")]
    CostGuard {
        what: String,
        needed: u128,
        limit: u128,
    },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("{0}")]
    Io(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, LabError>;

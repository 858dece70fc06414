//! Context-free grammars, Chomsky normal form, CYK recognition, bounded
//! enumeration and deterministic finite automata.

mod cfg;
mod cnf;
mod cyk;
mod dfa;
mod enumerate;

pub use cfg::{nt, t, Cfg, CfgBuilder, Production, Sym, Symbol, SymbolTable};
pub use cnf::{to_cnf, CnfGrammar};
pub use cyk::{cyk_member, cyk_parse, ParseNode, ParseTree};
pub use dfa::{dfa_accepts, dfa_run, Dfa, DfaDocument, State, StateName};
pub use enumerate::{enumerate_bounded, enumerate_language, CnfLengthTable};

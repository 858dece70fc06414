//! A laboratory for the nested-palindrome language
//! `L₂ = { w (wᴿ)×3 (w)×15 (wᴿ)×5 : w ∈ {1,2}+ }` and the machinery around
//! it: context-free grammars with CYK recognition, advised membership
//! (parallel and serial), slice statistics with an exhaustive swap scan,
//! and pumping-lemma refutation.
//!
//! Every capability has a runnable program under `examples/`:
//!
//! ```bash
//! cargo run -p langlab --example swap_scan
//! ```
//!
//! The `langlab` binary exposes the same operations as JSON-emitting
//! subcommands.

pub mod advice;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod grammars;
pub mod oracle;
pub mod refuter;
pub mod suite;
pub mod swaplab;
pub mod words;

pub use error::{LabError, Result};
pub use oracle::{Language, Membership};
pub use words::{Letter, Word};

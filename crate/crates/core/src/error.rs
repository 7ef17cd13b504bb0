use thiserror::Error;

use crate::syntax::{Fragment, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("reserved symbol `_t` at byte {pos}")]
    ReservedSymbol { pos: usize },

    #[error("not in fragment {fragment}: {}", join_violations(.violations))]
    Fragment { fragment: Fragment, violations: Vec<Violation> },

    /// An enumeration or evaluation guard would be exceeded.
    #[error("guard exceeded: {0}")]
    Guard(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("world index {index} out of range for a model with {len} worlds")]
    InvalidWorld { index: usize, len: usize },

    #[error("duplicate world {0}")]
    DuplicateWorld(String),

    #[error("truth vectors range over different models")]
    ModelMismatch,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

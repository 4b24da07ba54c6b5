//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("index out of range at position {pos}: {msg}")]
    IndexRange { pos: usize, msg: String },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("mode bound exceeded: {0}")]
    EngineBound(String),
    #[error("unsupported operator: {0}")]
    Unsupported(String),
    #[error("probe failed: {0}")]
    ProbeFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

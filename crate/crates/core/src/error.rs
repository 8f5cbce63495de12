use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A natural number that is not the image of any canonical rational.
    #[error("not a valid code: {0}")]
    NotACode(String),

    /// A term violating the arity constraints of its constructors.
    #[error("ill-formed term: {0}")]
    IllFormed(String),

    #[error("arity mismatch: term takes {expected} argument(s), got {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// Evaluation ran out of its step budget.
    #[error("evaluation did not finish within {fuel} steps")]
    Diverged { fuel: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

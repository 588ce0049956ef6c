//! Crate-wide error type.
//!
//! The variants distinguish the failure classes that callers (in particular
//! the CLI) need to react to differently: malformed input text, a violated
//! monoid axiom with its witness, misuse of an operation, a violated
//! precondition, a resource bound, and internal consistency failures that
//! signal a bug rather than bad input.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input did not parse; positions are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A candidate table violated an axiom; `witness` holds element indices.
    #[error("axiom `{axiom}` violated at witness {witness:?}")]
    Axiom { axiom: &'static str, witness: Vec<usize> },

    /// Arguments outside an operation's domain (wrong monoid, non-idempotent
    /// input where an idempotent is required, out-of-range fraction, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition does not hold for the given input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A configured resource bound would be exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),

    /// A postcondition the theory guarantees failed to verify; this is a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

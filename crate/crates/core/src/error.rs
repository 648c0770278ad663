use thiserror::Error;

/// Errors produced by the library and the command-line front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arity, alphabet, length or coordinate mismatch between arguments.
    #[error("shape error: {0}")]
    Shape(String),

    /// A value outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A configured size limit would be exceeded.
    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: String,
        limit: usize,
    },

    /// A decision tree failed structural validation.
    #[error("invalid tree: {0}")]
    InvalidTree(crate::tree::Violation),

    /// Malformed input text.
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },

    /// An exact inequality that must hold by construction was violated.
    /// Seeing this means there is a bug in the elimination code.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

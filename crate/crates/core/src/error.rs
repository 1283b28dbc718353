use thiserror::Error;

/// Errors raised by the workbench library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid index point: {0}")]
    InvalidIndex(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polyhedron is infeasible")]
    Infeasible,
    #[error("polyhedron has a non-trivial lineality space of dimension {0}")]
    Lineality(usize),
    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("unknown constraint reference: {0}")]
    UnknownReference(String),
    #[error("polynomials are not comparable on m >= 1: {0}")]
    Incomparable(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

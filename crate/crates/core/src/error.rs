use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("quotient requested but the second subspace is not contained in the first")]
    NotASubspace,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("operation requires a symplectic basis context")]
    NotSymplectic,
    #[error("basis contexts differ")]
    ContextMismatch,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("element is not in the required subspace: {0}")]
    NotInSubspace(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource cap exceeded: {what} needs {needed} > cap {cap}")]
    ResourceCap { what: String, needed: usize, cap: usize },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

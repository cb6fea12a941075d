use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A scalar lies outside the bounds an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("point {0} is not on the diagonal")]
    NotOnDiagonal(String),
    /// A witness search exhausted its candidate grid without success.
    #[error("no witness found at the configured resolution: {0}")]
    ResolutionExhausted(String),
    #[error("instance too large for brute-force enumeration: {0}")]
    SizeGuard(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown t-norm {0:?}")]
    UnknownTNorm(String),
    #[error("arithmetic overflow in exact rational computation")]
    Overflow,
    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

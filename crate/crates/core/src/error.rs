use thiserror::Error;

/// Failure modes shared by every module.
///
/// Variants split into two families: input errors (malformed requests,
/// out-of-range parameters) and contract errors (a mathematical
/// precondition such as commutativity does not hold). The CLI maps the
/// first family to exit code 2 and the second to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("group of order {0} exceeds the size cap {1}")]
    SizeOverflow(u128, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group axioms violated: {0}")]
    AxiomViolation(String),
    #[error("index {index} out of range for a set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not abelian: {0}")]
    NotAbelian(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("weight normalization violated: {0}")]
    WeightNormalization(String),
    #[error("representation relation violated: residual {0:e}")]
    RelationViolation(f64),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the error is a violated mathematical contract rather
    /// than malformed input.
    pub fn is_contract(&self) -> bool {
        matches!(
            self,
            Error::NotAbelian(_)
                | Error::NotSubgroup(_)
                | Error::ContextMismatch(_)
                | Error::WeightNormalization(_)
                | Error::RelationViolation(_)
                | Error::Consistency(_)
                | Error::AxiomViolation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("product has more than one term per entry and cannot stay exact")]
    NotMonomial,
    #[error("subspace is not stable under the operator (leakage {0:e})")]
    NotStable(f64),
    #[error("invalid angular momentum labels: {0}")]
    InvalidHalfInteger(String),
}

pub type Result<T> = std::result::Result<T, Error>;

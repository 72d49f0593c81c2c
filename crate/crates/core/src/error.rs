use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("q must be a prime power (got {0})")]
    NotPrimePower(u64),

    #[error("characteristic {0} is too large for word-sized arithmetic")]
    ModulusTooLarge(u64),

    #[error("invalid weight k = {0}: weights start at 2")]
    InvalidWeight(u64),

    #[error("binomial with negative upper index n = {0}")]
    NegativeUpperIndex(i64),

    #[error("operands live over different prime fields (p = {0} and p = {1})")]
    ModulusMismatch(u64, u64),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the zero vector is not an eigenvector")]
    ZeroEigenvector,

    #[error("class C_{j} has {size} elements; the closed form needs exactly 2")]
    ClassCardinality { j: u64, size: usize },

    #[error("cofactor oracle limited to dimension 8 (got {0})")]
    OracleTooLarge(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

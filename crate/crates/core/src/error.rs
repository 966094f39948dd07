use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("all input vectors are numerically zero")]
    EmptySpan,

    #[error("zero vector at index {0}")]
    ZeroVector(usize),

    #[error("zero subspace at index {0}")]
    ZeroSubspace(usize),

    #[error("non-finite entry")]
    NonFinite,

    #[error("odd real dimension {0} has no complex counterpart")]
    OddDimension(usize),

    #[error("matrix is not symmetric/Hermitian (deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("basis is not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} exceeds supported limit 101")]
    PrimeTooLarge(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weight at index {index} is not positive ({weight})")]
    NonPositiveWeight { index: usize, weight: f64 },

    #[error("vector at index {index} is not unit norm (norm {norm})")]
    NotUnitNorm { index: usize, norm: f64 },

    #[error("frame is not tight (bounds {lower}, {upper})")]
    NotTight { lower: f64, upper: f64 },

    #[error("operation requires a real family")]
    ComplexInput,

    #[error("operation requires a complex family")]
    RealInput,

    #[error("family failed verification: {0}")]
    Unverified(String),
}

pub type Result<T> = std::result::Result<T, Error>;

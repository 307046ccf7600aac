use thiserror::Error;

/// Errors produced by the cobordism engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus mismatch: {0:?} vs {1:?}")]
    ModulusMismatch(Option<u64>, Option<u64>),

    #[error("variable mismatch between series: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),

    #[error("series composition requires a zero constant term")]
    NonzeroConstantTerm,

    #[error("leading coefficient is not invertible")]
    NotInvertible,

    #[error("dimension {dim} exceeds truncation weight {trunc}")]
    TruncationExceeded { dim: u32, trunc: u32 },

    #[error("input not in the Lazard ring: non-integral coordinate at {partition}")]
    NotInLazard { partition: String },

    #[error("class is not homogeneous")]
    NotHomogeneous,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("group too small: rank {rank} but Y_{s} needs rank at least {needed}")]
    GroupTooSmall { rank: usize, s: u32, needed: usize },

    #[error("trivial character in a bundle without fixed part")]
    TrivialCharacter,

    #[error("invalid variety expression: {0}")]
    InvalidExpr(String),

    #[error("generator bases differ: {0} vs {1}")]
    BasisMismatch(String, String),

    #[error("basis validation failed: {0}")]
    BasisValidation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

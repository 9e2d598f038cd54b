use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("linear system is inconsistent: right-hand side is not in the column space")]
    Inconsistent,

    #[error("matrix is not idempotent")]
    NotIdempotent,

    #[error("block is not invertible in degree {degree}")]
    NotInvertible { degree: i32 },

    #[error("map does not commute with the differentials in degree {degree}")]
    NotChainMap { degree: i32 },

    #[error("subspace is not closed under the differential in degree {degree}")]
    NotClosed { degree: i32 },

    #[error("d∘d is nonzero at degree {degree}")]
    NonzeroSquare { degree: i32 },

    #[error("map is not injective in degree {degree}")]
    NotInjective { degree: i32 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("partition sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },

    #[error("estimated memory {bytes} bytes exceeds the guard of {limit} bytes")]
    MemoryGuard { bytes: u128, limit: u128 },

    #[error("index out of range: {0}")]
    Range(String),

    #[error("homology is not concentrated in a single parity")]
    MixedParity,

    #[error("hypotheses do not hold: {0}")]
    Inapplicable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

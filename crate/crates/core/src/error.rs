use alloc::string::String;

/// Errors raised by the toolkit's constructors and operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid dimension {0}: must lie in 1..=64")]
    InvalidDimension(usize),

    #[error("entry count {actual} does not fill a {dim}x{dim} matrix")]
    EntryCount { dim: usize, actual: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |h - h^dagger| entry = {max_deviation:e}")]
    NotHermitian { max_deviation: f64 },

    #[error("state is not normalized: norm^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("operator trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("operator is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("direction is not a unit vector: norm = {norm}")]
    NotUnitVector { norm: f64 },

    #[error("outcome probability {probability:e} is too small to condition on")]
    ZeroProbability { probability: f64 },

    #[error("outcome must be +1 or -1, got {0}")]
    InvalidOutcome(i32),

    #[error("representativeness conditions are stated only for a pure state and a non-degenerate observable: {0}")]
    RepresentativenessUndefined(String),

    #[error("observables {first} and {second} {relation}")]
    Commutation {
        first: String,
        second: String,
        relation: &'static str,
    },

    #[error("observable {label} does not square to the identity (deviation {deviation:e})")]
    NotInvolution { label: String, deviation: f64 },

    #[error("context {context}: {reason}")]
    InvalidContext { context: usize, reason: String },

    #[error("assignment search over {observables} observables exceeds the limit of {limit}")]
    ProblemTooLarge { observables: usize, limit: usize },

    #[error("lattice with {atoms} atoms exceeds the enumeration limit of {limit}")]
    LatticeTooLarge { atoms: usize, limit: usize },

    #[error("invalid basis set: {0}")]
    InvalidBasis(String),

    #[error("statistics: {0}")]
    InvalidStatistics(String),
}

pub type Result<T> = core::result::Result<T, Error>;

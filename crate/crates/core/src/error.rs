use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector must have at least one coordinate")]
    EmptyVector,

    #[error("non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("point lies outside the open unit ball (norm = {norm})")]
    OutsideBall { norm: f64 },

    #[error("automorphism image has norm {norm} >= 1; inputs are ill-conditioned")]
    IllConditioned { norm: f64 },

    #[error("Carleson constant zero: points {first} and {second} coincide")]
    CarlesonZero { first: usize, second: usize },

    #[error("Carleson constant {delta:e} is below the threshold {threshold:e}")]
    CarlesonBelowThreshold { delta: f64, threshold: f64 },

    #[error("conditioning failure at index {index}: |B_j(x_j)| = {value:e} < {floor:e}")]
    Conditioning { index: usize, value: f64, floor: f64 },

    #[error("delta must lie in (0, 1], got {0}")]
    InvalidDelta(f64),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("radius underflow: 1 - r_{index} = {gap:e} is below the representable gap")]
    RadiusUnderflow { index: usize, gap: f64 },

    #[error("length mismatch: system has {expected} points, values have {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("sequence must contain at least one point")]
    EmptySequence,

    #[error("invalid permutation")]
    InvalidPermutation,

    #[error("stored system field `{field}` disagrees with the recomputed value")]
    CorruptSystem { field: &'static str },

    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),

    #[error("invalid tolerance override: {0}")]
    InvalidTolerance(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

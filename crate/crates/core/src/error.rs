use thiserror::Error;

/// Input and bound errors shared across the crate.
///
/// Everything here maps to "input error" at the CLI boundary (exit code 2).
/// Mathematical negatives (a criterion staying silent, a witness failing
/// verification, a search finding nothing) are ordinary return values, never
/// errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partitions have different weights: {0} vs {1}")]
    WeightMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("{quantity} {value} exceeds the supported bound {bound}")]
    BoundExceeded {
        quantity: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("unsupported connection class {0}, expected transpositions, 3-cycles or double transpositions")]
    UnsupportedClass(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("witness file, line {line}: {message}")]
    WitnessFormat { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

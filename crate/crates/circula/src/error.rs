use thiserror::Error;

/// Errors raised by model construction, density evaluation and fitting.
#[derive(Debug, Error)]
pub enum CirculaError {
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("{what} must lie in {range}, got {value}")]
    OutOfRange {
        what: &'static str,
        range: &'static str,
        value: f64,
    },

    #[error("sample is empty")]
    EmptySample,

    #[error("flat index pair ({i}, {j}) is invalid for length {n}: need j < i < n")]
    BadIndexPair { i: usize, j: usize, n: usize },

    #[error("expected {expected} series, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("transition of order {needed} needs at least {needed} history blocks, got {got}")]
    InsufficientHistory { needed: usize, got: usize },

    #[error("{0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, CirculaError>;

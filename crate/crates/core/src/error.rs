//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCount { n: usize, max: usize },

    #[error("basis index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: u64, n: usize },

    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid qubit pair ({i}, {j}) for {n} qubits")]
    InvalidQubitPair { i: usize, j: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("invalid mixer: {0}")]
    InvalidMixer(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("approximation ratio undefined: {0}")]
    UndefinedRatio(String),

    #[error("grid too small: {nx}x{ny} (need at least 2x2)")]
    GridTooSmall { nx: usize, ny: usize },

    #[error("too many variables: {n_vars} (limit {max})")]
    TooManyVariables { n_vars: usize, max: usize },

    #[error("polynomial degree {degree} exceeds supported degree 3")]
    DegreeTooHigh { degree: usize },

    #[error("no hit within step budget for n = {ns:?}")]
    NoHit { ns: Vec<usize> },

    #[error("need at least {need} data points, got {got}")]
    NotEnoughPoints { got: usize, need: usize },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

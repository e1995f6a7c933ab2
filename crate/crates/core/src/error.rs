use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCount { n: usize, max: usize },

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("two-qubit gate operands coincide on qubit {0}")]
    CoincidentOperands(usize),

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),

    #[error("invalid circuit spec: {0}")]
    InvalidSpec(String),

    #[error("invalid checkpoint schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("ensemble needs at least 2 members, got {0}")]
    EnsembleTooSmall(usize),

    #[error("integration needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("abscissae must be strictly increasing (index {0})")]
    UnsortedAbscissae(usize),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("cell {cell} failed: {source}")]
    CellFailed {
        cell: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config parse error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

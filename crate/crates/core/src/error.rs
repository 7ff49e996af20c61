use std::path::PathBuf;

/// Errors produced anywhere in the factoring pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("degenerate QUBO instance: {0}")]
    DegenerateQubo(&'static str),

    #[error("{requested} qubits exceeds the emulator limit of {limit}")]
    TooManyQubits { requested: usize, limit: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("malformed trace at line {line}: {message}")]
    MalformedTrace { line: usize, message: String },

    #[error("circuit text line {line}: {message}")]
    CircuitParse { line: usize, message: String },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

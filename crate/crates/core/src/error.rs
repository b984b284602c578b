use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = BmfError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum BmfError {
    #[error("index {index} out of range for {what} of size {bound}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The approximation covers a position that is zero in the input.
    #[error("matrix is not below the input at ({row}, {col})")]
    NotFromBelow { row: usize, col: usize },

    #[error("brute-force enumeration refused: {cols} attributes exceeds limit {limit}")]
    TooManyAttributes { cols: usize, limit: usize },

    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),

    /// The concept supply ran dry while uncovered ones remain.
    #[error("concept supply exhausted with {uncovered} ones still uncovered")]
    Incomplete { uncovered: u64 },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl BmfError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BmfError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Validates the approximation ratio of a factorization run.
pub fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(BmfError::InvalidEpsilon(epsilon))
    }
}

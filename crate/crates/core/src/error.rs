use thiserror::Error;

use crate::tableaux::Cell;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{mu} is not contained in {lambda}")]
    NotContained { mu: String, lambda: String },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("entry {0} is already in the tableau")]
    DuplicateEntry(u32),

    #[error("entry {0} is not in the tableau")]
    MissingEntry(u32),

    #[error("cell {0} is not a corner of the tableau")]
    NotACorner(Cell),

    #[error("cell {0} is not an addable box")]
    NotAddable(Cell),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid vacillating tableau at step {index}: {reason}")]
    InvalidPath { index: usize, reason: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} exceeds the configured limit {limit}")]
    LimitExceeded { what: String, limit: usize },

    #[error("growth diagram is inconsistent at cell ({column},{row}): {reason}")]
    InconsistentGrowth {
        column: usize,
        row: usize,
        reason: String,
    },
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            column,
            message: message.into(),
        }
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("relation is not {property}: {witness}")]
    NotEquivalence { property: &'static str, witness: String },

    #[error("label pool has {pool} elements but the domain has {needed}")]
    PoolTooSmall { pool: usize, needed: usize },

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("dimension {dim} exceeds truncation {truncation}")]
    Truncation { dim: usize, truncation: usize },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("invalid simplicial set: {0}")]
    InvalidSimplicialSet(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("square does not commute: {0}")]
    NonCommutingSquare(String),

    #[error("filler for {square} would exceed truncation {truncation}")]
    TruncationOverflow { square: String, truncation: usize },

    #[error("not a fibration: {0}")]
    NotFibration(String),

    #[error("decode failed at position {position}: {message}")]
    Decode { position: usize, message: String },

    #[error("algebra structure is partial: no value for {0}")]
    PartialAlgebra(String),

    #[error("ill-formed term: {0}")]
    IllFormedTerm(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Shifts the position of a parse error found inside one line of a larger document.
    pub(crate) fn at_line(self, line: usize, column_offset: usize) -> Self {
        match self {
            Error::Parse { column, message, .. } => Error::Parse {
                line,
                column: column + column_offset,
                message,
            },
            other => other,
        }
    }
}

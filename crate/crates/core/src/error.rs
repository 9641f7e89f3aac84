use thiserror::Error;

/// Errors raised by the combinatorial and finite-group routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("invalid Cartan type {letter}{rank}: {reason}")]
    InvalidCartan {
        letter: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("enumeration guard exceeded: {0}")]
    Guard(String),

    #[error("polynomial division is not exact: remainder {remainder}")]
    InexactDivision { remainder: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("root datum mismatch: {0} vs {1}")]
    DatumMismatch(String, String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("linear program: {0}")]
    Lp(String),

    #[error("character table construction failed: {0}")]
    CharacterTable(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

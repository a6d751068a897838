use std::io;
use std::path::PathBuf;

use crate::key::Key;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid key {key:?}: {reason}")]
    InvalidKey { key: String, reason: &'static str },

    #[error("number {0} is not finite")]
    NonFinite(f64),

    #[error("semiring `{semiring}` is numeric-only but received text value {value:?}")]
    NonNumeric {
        semiring: &'static str,
        value: String,
    },

    #[error("text value {0:?} contains a line break and cannot be serialized")]
    Unserializable(String),

    #[error("malformed range: {lo:?} > {hi:?}")]
    MalformedRange { lo: Key, hi: Key },

    #[error("duplicate key {0:?}")]
    DuplicateKey(Key),

    #[error("row and column key sets differ; square key alignment required")]
    NotSquare,

    #[error("power iteration collapsed to the zero vector after {iterations} iterations")]
    ZeroVector { iterations: usize },

    #[error(
        "power iteration did not converge in {iterations} iterations \
         (last eigenvalue estimate {eigenvalue}, residual {residual})"
    )]
    NotConverged {
        eigenvalue: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("table at {0} is read-only (another writer holds the lock)")]
    ReadOnly(PathBuf),

    #[error("store integrity: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

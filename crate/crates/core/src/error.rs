use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("table covers m <= {have}, but n = {need} needs m <= {need}")]
    TableCoverage { need: usize, have: usize },

    #[error("precision shortfall at m = {m}: entry accurate to {have} digits, sum needs {need}")]
    PrecisionShortfall { m: usize, have: u32, need: u32 },

    #[error("{path}:{line}: {reason}")]
    ZeroFile {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("not enough zeros: requested {requested} pairs, table holds {available}")]
    InsufficientZeros { requested: usize, available: usize },

    #[error("cache entry {path} is corrupt")]
    Cache { path: PathBuf },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

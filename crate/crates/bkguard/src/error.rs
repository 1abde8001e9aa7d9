use std::io;
use std::path::{Path, PathBuf};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] bkguard_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("no safe generalization found")]
    NoSafeNode,
}

impl Error {
    pub fn io(path: &Path, source: io::Error) -> Self {
        Error::Io { path: path.to_path_buf(), source }
    }

    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax { line, column, message: message.into() }
    }

    /// 2 for bad input, 3 for an exceeded budget, 4 when no node is safe,
    /// 1 for anything else (unreadable or unwritable files).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(bkguard_core::Error::BudgetExceeded { .. } | bkguard_core::Error::LatticeTooLarge { .. }) => 3,
            Error::NoSafeNode => 4,
            Error::Io { .. } => 1,
            Error::Csv(e) if matches!(e.kind(), csv::ErrorKind::Io(_)) => 1,
            _ => 2,
        }
    }
}

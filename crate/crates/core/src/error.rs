use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used to pick a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Data,
    Numerical,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Config => 2,
            ErrorKind::Data => 3,
            ErrorKind::Numerical => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid paper identifier {0:?} (expected a letter, two digits, '-', four digits)")]
    PaperId(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("no records")]
    NoRecords,

    #[error("signal too short: {len} samples, at least {min} required")]
    TooShort { len: usize, min: usize },

    #[error("lag {lag} out of range for a signal of {len} samples")]
    LagOutOfRange { lag: usize, len: usize },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("k = {k} out of range [{min}, {max}]")]
    KOutOfRange { k: usize, min: usize, max: usize },

    #[error("silhouette is undefined for a single cluster")]
    SingleCluster,

    #[error("feature id sets differ: {0}")]
    IdMismatch(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("checksum mismatch for {path}: expected {expected}, got {actual}")]
    Checksum {
        path: PathBuf,
        expected: String,
        actual: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) => ErrorKind::Config,
            Error::TooShort { .. }
            | Error::LagOutOfRange { .. }
            | Error::NonFinite(_)
            | Error::KOutOfRange { .. }
            | Error::SingleCluster => ErrorKind::Numerical,
            Error::Stage { source, .. } => source.kind(),
            _ => ErrorKind::Data,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(path: impl Into<PathBuf>, source: serde_json::Error) -> Self {
        Error::Json {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

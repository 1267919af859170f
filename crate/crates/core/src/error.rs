use std::path::PathBuf;

use crate::spectral::Layout;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("coordinate {value} outside [1, {bound}]")]
    Domain { value: f64, bound: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("spectrum has {found:?} layout, expected {expected:?}")]
    Layout { expected: Layout, found: Layout },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(
        "explicit operator of dimension {dim} exceeds the capacity limit of {cap}; \
         use the implicit rank-1 operator instead (omit --explicit-operator)"
    )]
    Capacity { dim: usize, cap: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line harness.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_)
            | Error::Domain { .. }
            | Error::DimensionMismatch(_)
            | Error::Layout { .. } => 2,
            Error::Io { .. } | Error::Format { .. } => 3,
            Error::Degenerate(_) => 4,
            Error::Capacity { .. } => 5,
        }
    }
}

use std::path::{Path, PathBuf};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("missing file {0}")]
    MissingFile(PathBuf),
    #[error("{path}: expected {expected} bytes, found {found}")]
    SizeMismatch { path: PathBuf, expected: u64, found: u64 },
    #[error("run {run}, parameter {param}: value {value} outside the declared range")]
    RangeViolation { run: usize, param: usize, value: f64 },
    #[error("malformed manifest {path}: {reason}")]
    MalformedManifest { path: PathBuf, reason: String },
    #[error("malformed file {path}: {reason}")]
    MalformedFile { path: PathBuf, reason: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] sensvol_core::Error),
}

impl Error {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::MissingFile(path.to_path_buf())
        } else {
            Error::Io { path: path.to_path_buf(), source }
        }
    }

    pub(crate) fn malformed(path: &Path, reason: impl ToString) -> Self {
        Error::MalformedFile { path: path.to_path_buf(), reason: reason.to_string() }
    }
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    /// A row, field or `key=value` line could not be parsed.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Input parsed, but violates a documented invariant of the type it builds.
    #[error("invalid {what}: {message}")]
    Invalid { what: &'static str, message: String },

    /// A statistic or metric is undefined for the given data (zero variance, zero mean, ...).
    #[error("undefined {metric}: {message}")]
    Undefined { metric: &'static str, message: String },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, message: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            message: message.into(),
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn undefined(metric: &'static str, message: impl Into<String>) -> Self {
        Error::Undefined {
            metric,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

//! Crate-wide error type.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("map format error in {path}: {message}")]
    MapFormat { path: PathBuf, message: String },
    #[error("config error: {field}: {message}")]
    Config { field: String, message: String },
    #[error("zoning error: {0}")]
    Zoning(String),
    #[error("no usable cell within {radius} cell lengths of zone centroid ({x:.3}, {y:.3})")]
    UnusableCentroid { x: f64, y: f64, radius: f64 },
    #[error("sensor pose ({x:.3}, {y:.3}) is not in free space")]
    SensorPose { x: f64, y: f64 },
    #[error("mission aborted: {0}")]
    Aborted(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn map_format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::MapFormat {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

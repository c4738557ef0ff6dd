use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },

    #[error("invalid sentence: {0}")]
    InvalidSentence(String),

    #[error("MSeg '{mseg}' does not match form '{form}'")]
    MsegMismatch { form: String, mseg: String },

    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("annotations diverge at {position}: {message}")]
    Misaligned { position: String, message: String },

    #[error("{0}")]
    Undefined(String),

    #[error("empty corpus: {0}")]
    EmptyCorpus(String),

    #[error("duplicate {kind} '{key}'")]
    Duplicate { kind: &'static str, key: String },

    #[error("invalid query: {0}")]
    Query(String),

    #[error("scenario: {0}")]
    Scenario(String),

    #[error("model: {0}")]
    Model(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Attach the path of the file the error occurred in.
    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

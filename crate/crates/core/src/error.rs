use std::path::PathBuf;

use thiserror::Error;

/// A malformed statement in a triples file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}: `{text}`")]
pub struct ParseError {
    pub line: usize,
    pub text: String,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid IRI `{0}`")]
    InvalidIri(String),

    #[error("property <{0}> does not occur in the knowledge base")]
    UnknownProperty(String),

    #[error("instance <{0}> does not exist in the knowledge base")]
    UnknownInstance(String),

    #[error("undefined statistic: {0}")]
    UndefinedStatistic(&'static str),

    #[error("knowledge base has no instances")]
    EmptyKnowledgeBase,

    #[error("alignment line {line}: {message}")]
    Alignment { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

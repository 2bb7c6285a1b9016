use std::io;

use thiserror::Error;

/// Errors produced by the name finder library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("cannot form held-out halves: need at least 2 sentences, got {0}")]
    TooFewSentences(usize),

    #[error("fraction {0} is outside (0, 1]")]
    InvalidFraction(f64),

    #[error("key and response diverge at sentence {sentence}, token {token}: {detail}")]
    Alignment {
        sentence: usize,
        token: usize,
        detail: String,
    },

    #[error("model file version mismatch: expected {expected}, found {found}")]
    VersionMismatch { expected: String, found: String },

    #[error("model file line {line}: {message}")]
    ModelFormat { line: usize, message: String },

    #[error("learning curve at fraction {fraction}: {source}")]
    Experiment {
        fraction: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

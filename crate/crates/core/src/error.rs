use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex set must be non-empty")]
    EmptyVertexSet,
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("oracle budget exhausted")]
    OracleExhausted,
    #[error("sampling budget exhausted after {0} attempts")]
    SamplingExhausted(usize),
    #[error("cannot extend colouring to removed vertices: {0}")]
    Reconstruction(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("structural claim violated: {0}")]
    Claim(String),
    #[error("input contains an induced {pattern}: {witness}")]
    NotFree { pattern: String, witness: String },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

use crate::construct::HypothesisReport;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called outside its domain (bad dimension, missing face, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is larger than the exhaustive algorithm is allowed to handle.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),

    /// A tree family failed the construction hypotheses.
    #[error("tree family hypotheses failed: {}", .0.summary())]
    Hypotheses(Box<HypothesisReport>),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

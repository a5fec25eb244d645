use thiserror::Error;

/// Errors surfaced by the library. Input problems are separated from
/// "empty result" diagnostics so callers can map them to distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("digit {digit} outside alphabet [1, {bound}]")]
    DigitOutOfRange { digit: u32, bound: u32 },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("empty: {0}")]
    Empty(String),
    #[error("component {0} is not mixing")]
    NotMixing(usize),
    #[error("internal: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn empty(msg: impl Into<String>) -> Self {
        Error::Empty(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied arguments that do not fit together (dimension or field mismatch, bad ranges).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("division by zero")]
    DivisionByZero,

    /// Malformed text input. `line` is 1-based; 0 means the whole input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A desk-scale limit would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("not a Kakeya set: no full line in direction {direction:?}")]
    NoWitnessLine { direction: Vec<u32> },

    /// A proof pipeline reached a state its preconditions rule out.
    #[error("inconsistent pipeline state: {0}")]
    Inconsistent(String),
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

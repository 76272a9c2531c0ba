use thiserror::Error;

/// Errors raised by numeric operations and by the corpus reader.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: argument outside domain: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: pole at {at}")]
    Pole { op: &'static str, at: String },

    #[error("{op}: no convergence after {terms} terms")]
    NonConvergence { op: &'static str, terms: u64 },

    #[error("{op}: root finding failed: {detail}")]
    RootNotFound { op: &'static str, detail: String },

    #[error("invalid precision: {0}")]
    Precision(String),

    #[error("expression: {0}")]
    Expression(String),

    #[error("corpus line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown corpus entry `{0}`")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn pole(op: &'static str, at: impl Into<String>) -> Self {
        Error::Pole { op, at: at.into() }
    }
}

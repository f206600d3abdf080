use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A hypothesis of a bound was violated. The message names the inequality.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computed quantity failed a bound or identity it must satisfy.
    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("pole: zeta(s) is not defined at s = 1")]
    Pole,

    #[error("precision error: {0}")]
    Precision(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation error at ordinate index {index}: {message}")]
    Validation { index: usize, message: String },

    #[error("insufficient data: need at least {needed} ordinates, found {found}")]
    InsufficientData { needed: usize, found: usize },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

/// Returns `Err(Error::Domain)` carrying `what` unless `ok` holds.
pub(crate) fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(what()))
    }
}

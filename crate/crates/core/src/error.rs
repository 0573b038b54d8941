use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// Everything except [`Error::Invariant`] is a problem with the caller's
/// input; `Invariant` means an internal consistency check failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("Witt length {n} exceeds the configured cap {cap} (raise `witt-cap`)")]
    LengthCap { n: usize, cap: usize },
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("degenerate extension: {0}")]
    Degenerate(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub(crate) fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

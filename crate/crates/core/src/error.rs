use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Input errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("invalid signal: {0}")]
    InvalidSignal(String),
    #[error("signals {first} and {second} are identical")]
    DuplicateSignal { first: usize, second: usize },
    #[error("invalid information structure: {0}")]
    InvalidInfoStructure(String),
    #[error("index {index} out of range for {len} signals")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A result failed its own exact self-check.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn dim(context: &'static str, expected: usize, found: usize) -> Self {
        Error::Dimension {
            context,
            expected,
            found,
        }
    }
}

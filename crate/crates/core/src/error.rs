use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported cone variant: {0}")]
    UnsupportedVariant(String),

    #[error("invalid order ideal: {0}")]
    InvalidIdeal(String),

    #[error("ordering precondition violated: {0}")]
    Ordering(String),

    #[error("no unique state: {0}")]
    NoUniqueState(String),

    #[error("no nonnegative rational convex decomposition exists")]
    DecompositionFailure,

    #[error("rank deficiency: {0}")]
    Rank(String),

    #[error("cocycle condition violated on simplex {simplex:?}")]
    CocycleViolation { simplex: Vec<usize> },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}

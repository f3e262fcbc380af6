use thiserror::Error;

/// Errors raised by the exact geometry routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    Dimension {
        op: &'static str,
        expected: String,
        found: String,
    },

    #[error("matrix is singular")]
    Singular,

    #[error("a symplectic form needs even dimension, got {0}")]
    OddSymplectic(usize),

    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),

    #[error("no isotropic subspace of dimension {r} exists in dimension {n}")]
    NoIsotropic { r: usize, n: usize },

    #[error("infeasible rank request: {0}")]
    InfeasibleRank(String),

    #[error("point is not in the null cone")]
    NotNull,

    #[error("preimage is not unique: {0}")]
    NotUnique(String),

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("sampling gave up after {0} attempts")]
    SamplingExhausted(usize),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(op: &'static str, expected: impl ToString, found: impl ToString) -> Self {
        Error::Dimension {
            op,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

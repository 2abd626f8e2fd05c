use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation `{operation}` is not available for family {family}")]
    UnsupportedFamily { family: String, operation: &'static str },

    #[error("representations act on different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },

    #[error("invariant `{0}` is not defined at this point")]
    BranchUndefined(String),

    #[error("point lies outside the foliated manifold (f2 = 0)")]
    NotInFoliatedManifold,

    #[error("points lie on different leaves")]
    LeafMismatch,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn unsupported(family: impl ToString, operation: &'static str) -> Self {
        Error::UnsupportedFamily { family: family.to_string(), operation }
    }

    pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
        if expected == got {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, got })
        }
    }
}

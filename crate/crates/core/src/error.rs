use thiserror::Error;

/// Errors produced by the library.
///
/// The variants map onto the CLI exit-code contract: `Parameter`, `Domain`,
/// `DegreeMismatch`, `Precondition` and `Infeasible` are bad input (exit 1),
/// `NumericFailure` is exit 2, and `Verification` / `Invariant` are exit 3.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("degree mismatch: requested padding to degree {requested} but polynomial has degree {actual}")]
    DegreeMismatch { requested: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("infeasible triple: {0}")]
    Infeasible(String),

    #[error("numeric failure: {what} (best residual {residual:e})")]
    NumericFailure { what: String, residual: f64 },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn numeric(what: impl Into<String>, residual: f64) -> Self {
        Error::NumericFailure {
            what: what.into(),
            residual,
        }
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegreeMismatch { .. }
            | Error::Parameter(_)
            | Error::Domain(_)
            | Error::Precondition(_)
            | Error::Infeasible(_) => 1,
            Error::NumericFailure { .. } => 2,
            Error::Verification(_) | Error::Invariant(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

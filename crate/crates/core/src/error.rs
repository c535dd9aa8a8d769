use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible by (1-t)")]
    NotDivisible,

    #[error("coefficient window too short: need {needed} trailing zero h-values, found {found}")]
    WindowTooShort { needed: usize, found: usize },

    #[error("{0} is undefined on the zero series")]
    ZeroSeries(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A theorem hypothesis failed on the given input.
    #[error("hypothesis violated{}: {reason}", index.map(|i| format!(" by input #{i}")).unwrap_or_default())]
    Hypothesis { index: Option<usize>, reason: String },

    /// Two independent computations disagreed. Always an implementation bug.
    #[error("verification failed for {what}: expected {expected}, got {actual}")]
    Verification {
        what: String,
        expected: String,
        actual: String,
    },
}

impl Error {
    pub(crate) fn hypothesis(index: Option<usize>, reason: impl Into<String>) -> Self {
        Error::Hypothesis {
            index,
            reason: reason.into(),
        }
    }

    pub(crate) fn verification(
        what: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Error::Verification {
            what: what.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

use thiserror::Error;

/// Library-wide error type.
///
/// `Input` and `Domain` mark precondition violations the caller can fix;
/// the remaining variants signal numerical breakdown of an otherwise valid
/// request (conditioning, lost positivity, non-convergence).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("outside validated domain: {0}")]
    Domain(String),
    #[error("matrix not positive definite (pivot {pivot} non-positive)")]
    NotPositiveDefinite { pivot: usize },
    #[error("conditioning breakdown: {detail}")]
    Conditioning {
        detail: String,
        /// Largest order for which the construction still succeeded.
        largest_usable_n: Option<usize>,
    },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for errors callers can repair by changing arguments.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use crate::calib::SetPool;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Distribution or sequence parameters violate family-specific validity.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The request is well-formed but not supported (e.g. even-sample median truth).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Matrix/vector/sequence sizes do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A stochastic search ran out of attempts before finding enough qualified sets.
    /// Carries whatever qualified so far.
    #[error("search exhausted after {attempts} attempts: found {} of {requested} sets", partial.sets.len())]
    SearchExhausted {
        attempts: usize,
        requested: usize,
        partial: Box<SetPool>,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}

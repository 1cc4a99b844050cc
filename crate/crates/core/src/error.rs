use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A brute-force routine was asked to run beyond its hard cap.
    #[error("{what} scale exceeded: {actual} > {limit}")]
    ScaleExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    /// Semigroup membership could not be settled within the coefficient bound.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// Two independent routes disagreed; this indicates a bug.
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

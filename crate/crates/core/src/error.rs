use thiserror::Error;

/// Errors raised by the planning library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoverError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("length mismatch: expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// The rate requirement cannot be met with this many links: the
    /// budget `b` or `c` is not strictly positive.
    #[error("{links} link(s) infeasible: {reason}")]
    InfeasibleLinkCount { links: usize, reason: String },

    /// The requested relay count exceeds the upper bound implied by the
    /// rate requirement.
    #[error("{requested} relay(s) requested but the rate requirement allows at most {bound}")]
    RelayBoundExceeded { requested: usize, bound: usize },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(&'static str),

    #[error("invalid scenario: {0}")]
    Scenario(String),
}

impl CoverError {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        CoverError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors that describe an infeasible configuration rather
    /// than malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            CoverError::InfeasibleLinkCount { .. } | CoverError::RelayBoundExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, CoverError>;

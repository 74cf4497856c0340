use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(
        "eigenvector matrix is defective or ill-conditioned (condition number {condition:.3e}); \
         propagate with expm instead"
    )]
    Defective { condition: f64 },
    #[error("eigenvalue iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },
    #[error("unsupported truncation: manifold {0} (only 0, 1 and 2 are built)")]
    UnsupportedTruncation(usize),
    #[error("unsupported bath regime: {0}")]
    UnsupportedRegime(String),
    #[error("model consistency: {0}")]
    ModelConsistency(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

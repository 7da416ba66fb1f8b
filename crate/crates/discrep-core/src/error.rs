use std::fmt;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated a precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// An exact enumeration would exceed its operation-count budget.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    /// A series truncation could not be certified to the requested tolerance.
    #[error("precision error: {0}")]
    Precision(String),
    /// The requested operation is not defined for this variant.
    #[error("unsupported variant: {0}")]
    UnsupportedVariant(String),
    /// Point/box dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl fmt::Display) -> Self {
        Error::Domain(msg.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

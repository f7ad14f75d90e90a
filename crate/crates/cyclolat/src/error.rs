//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the pipelines.
///
/// The two variants map onto the CLI exit codes: invalid input exits 2,
/// exceeded budgets exit 3. Verification failures are not errors; they are
/// report entries.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The caller asked for something outside the supported domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A configured resource budget would be exceeded.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::BudgetExceeded(msg.into())
    }
}

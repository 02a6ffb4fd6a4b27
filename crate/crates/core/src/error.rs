use thiserror::Error;

/// Errors raised by every operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the domain of the operation (bad rank, zero element, mixed tuple, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration would exceed its configured cap.
    #[error("capacity exceeded: {what} needs {needed} items, cap is {cap}")]
    Capacity { what: String, needed: u128, cap: u128 },

    /// Malformed element or type text.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Operands of incompatible shape, family or rank.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// A matrix expected to be invertible was singular.
    #[error("singular matrix: {0}")]
    Singular(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HardyError {
    /// A parameter lies outside the domain the operation is defined on.
    #[error("parameter domain error: {0}")]
    Domain(String),
    /// The operation has no meaning for the given geometry.
    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),
    /// Quadrature or search could not reach a conclusion.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = HardyError> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(HardyError::Domain(msg.into()))
}

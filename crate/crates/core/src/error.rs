use thiserror::Error;

/// Errors raised by the analysis pipeline.
///
/// The variants line up with the CLI exit codes: input problems
/// (`Usage`, `Domain`, `Parse`) exit with 2, `Resource` with 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Mismatched ring specs or precisions, or arguments out of range.
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical precondition does not hold (non-unit, non-coprime, ...).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A size cap or numeric range was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A certificate failed to verify after construction.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn resource(msg: impl Into<String>) -> Error {
    Error::Resource(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}

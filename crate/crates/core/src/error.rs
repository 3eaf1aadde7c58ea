use thiserror::Error;

/// Errors reported by fallible operations in this crate.
///
/// Precondition violations that indicate a bug in the caller (for example a
/// split event landing on an excluded boundary) panic instead; only
/// recoverable input problems surface here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument was outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Raw input could not be turned into a valid value.
    #[error("format error: {0}")]
    Format(String),
    /// A combinatorial guard was exceeded (input too large to enumerate).
    #[error("guard error: {0}")]
    Guard(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub(crate) fn guard(msg: impl Into<String>) -> Self {
        Error::Guard(msg.into())
    }
}

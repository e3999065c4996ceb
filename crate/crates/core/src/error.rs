//! Crate-wide error type.
//!
//! Three failure families matter to callers:
//!
//! * [`Error::Format`] — a document (graph, decomposition, coloring, …)
//!   violates its file format; carries the 1-based line number.
//! * [`Error::Invalid`] — a precondition on an operation's inputs does not
//!   hold (disconnected graph, set that is not a vertex cover, bad arity, …).
//! * [`Error::Guard`] — an input is structurally fine but exceeds a
//!   deliberate resource guard; callers may retry with a larger limit.
//!
//! [`Error::Internal`] flags broken internal invariants and should never
//! surface on valid inputs.

use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A document does not follow its file format.
    #[error("line {line}: {msg}")]
    Format {
        /// 1-based line number within the offending document.
        line: usize,
        /// Description of the violation.
        msg: String,
    },

    /// An operation precondition does not hold for the given inputs.
    #[error("{0}")]
    Invalid(String),

    /// A resource guard tripped: the input would need `need` units but the
    /// configured limit is `limit`.
    #[error("resource guard: {what} needs {need} but limit is {limit}")]
    Guard {
        /// What was being bounded (states, assignments, vertices, …).
        what: String,
        /// Configured maximum.
        limit: u128,
        /// Estimated requirement of this input.
        need: u128,
    },

    /// An internal invariant was violated; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for format errors.
    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }

    /// Helper for precondition violations.
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Helper for guard trips.
    pub(crate) fn guard(what: impl Into<String>, limit: u128, need: u128) -> Self {
        Error::Guard {
            what: what.into(),
            limit,
            need,
        }
    }

    /// True when the error is a resource-guard trip (callers map these to a
    /// dedicated exit code).
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}

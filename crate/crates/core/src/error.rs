use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every evaluator in the crate.
///
/// The split matters to callers: `Domain`, `Range`, `Index` and
/// `Precondition` are caller mistakes, while `NonConvergence` and
/// `Overflow` mean the inputs were legal but no trustworthy value could be
/// produced.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("range error in {op}: {msg}")]
    Range { op: &'static str, msg: String },

    #[error("index error in {op}: {msg}")]
    Index { op: &'static str, msg: String },

    #[error("precondition violated in {op}: {msg}")]
    Precondition { op: &'static str, msg: String },

    #[error("{op} did not converge: {msg}")]
    NonConvergence { op: &'static str, msg: String },

    #[error("{op} overflowed: {msg}")]
    Overflow { op: &'static str, msg: String },

    #[error("{op}: distribution has zero mass")]
    ZeroMass { op: &'static str },

    #[error("{op}: retained probability mass {mass} is below {required}")]
    TruncationMass {
        op: &'static str,
        mass: f64,
        required: f64,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub(crate) fn range(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Range { op, msg: msg.into() }
    }

    pub(crate) fn index(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Index { op, msg: msg.into() }
    }

    pub(crate) fn precondition(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Precondition { op, msg: msg.into() }
    }

    pub(crate) fn non_convergence(op: &'static str, msg: impl Into<String>) -> Self {
        Error::NonConvergence { op, msg: msg.into() }
    }

    pub(crate) fn overflow(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Overflow { op, msg: msg.into() }
    }

    /// True for errors caused by legal inputs that could not be evaluated
    /// to the required accuracy.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Overflow { .. })
    }
}

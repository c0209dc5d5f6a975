use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps these onto process exit codes: configuration problems exit
/// with 2, convergence failures with 3 and Monte Carlo / analytic
/// disagreements with 4.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// An iterative or adaptive scheme failed to reach its tolerance.
    #[error("{op} did not converge: {msg}")]
    Convergence { op: &'static str, msg: String },

    /// A fitted quantity came out non-finite or with an impossible sign.
    #[error("fitting failed at node {node}: {msg}")]
    Fit { node: usize, msg: String },

    /// Invalid experiment configuration (bad JSON, missing or clashing fields).
    #[error("config error: {0}")]
    Config(String),

    /// Monte Carlo estimate and analytic value disagree beyond the gate.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Filesystem or stream failure while emitting results.
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub(crate) fn convergence(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Convergence { op, msg: msg.into() }
    }

    /// Exit code the `mgsense` binary reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain { .. } => 2,
            Error::Convergence { .. } | Error::Fit { .. } => 3,
            Error::Verification(_) => 4,
            Error::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

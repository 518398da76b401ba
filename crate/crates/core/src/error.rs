use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    /// The computation ran out of budget. `best` is the last value obtained and
    /// `estimate` its error estimate in the same units.
    #[error("{what} did not converge (best value {best}, error estimate {estimate:.3e})")]
    Convergence {
        what: &'static str,
        best: Complex64,
        estimate: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

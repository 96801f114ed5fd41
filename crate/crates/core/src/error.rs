use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Every precondition failure names the violated condition so front ends can
/// surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("domain error: {condition} (in {operation})")]
    Domain {
        operation: &'static str,
        condition: String,
    },

    #[error("{operation} did not converge after {evals} evaluations (error estimate {abs_err:.3e})")]
    NoConvergence {
        operation: &'static str,
        evals: usize,
        abs_err: f64,
    },

    #[error("{operation}: integral appears to diverge")]
    DivergenceSuspected { operation: &'static str },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("degree condition violated: numerator degree {numerator} must be below denominator degree {denominator}")]
    Degree { numerator: usize, denominator: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("root polishing failed: {0}")]
    RootCondition(String),
}

impl Error {
    pub(crate) fn domain(operation: &'static str, condition: impl Into<String>) -> Self {
        Error::Domain {
            operation,
            condition: condition.into(),
        }
    }

    pub(crate) fn pole(function: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole {
            function,
            at: at.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

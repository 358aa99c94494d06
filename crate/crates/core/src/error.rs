use num_complex::Complex64;
use thiserror::Error;

use crate::expr::ParseError;
use crate::numerics::ValueWithError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at s = {0}")]
    Pole(Complex64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("non-finite integrand value at x = {at}")]
    NonFiniteIntegrand { at: f64 },
    #[error("non-finite series term at index {index}")]
    NonFiniteTerm { index: usize },
    #[error("no convergence after {evaluations} evaluations (partial value {}, error estimate {:e})", partial.value, partial.error_estimate)]
    NoConvergence {
        evaluations: usize,
        partial: ValueWithError,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("at column {}: {source}", position + 1)]
    At {
        position: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Strips position wrappers added by the expression evaluator.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            e => e,
        }
    }

    /// True for failures of a numerical procedure (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.root(),
            Error::NoConvergence { .. }
                | Error::NonFiniteIntegrand { .. }
                | Error::NonFiniteTerm { .. }
                | Error::Overflow(_)
        )
    }
}

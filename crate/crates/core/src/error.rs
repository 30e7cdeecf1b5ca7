//! Shared error type.

use alloc::boxed::Box;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the numerical layer.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument violates a documented domain restriction.
    Domain { what: &'static str },
    /// A series hit its term cap before the stopping rule fired.
    NonConvergence { what: &'static str, terms: usize },
    /// A quotient was requested too close to a zero of its denominator.
    Pole { what: &'static str, x: f64 },
    /// Adaptive quadrature exceeded its bisection depth on a subinterval.
    Divergence { a: f64, b: f64 },
    /// A normalization integral vanished.
    ZeroNorm,
    /// Invalid grid or interval specification.
    Grid { what: &'static str },
    /// An evaluation failed at a specific point of a sweep.
    At { x: f64, source: Box<Error> },
}

impl Error {
    /// Attaches the offending sweep point to an evaluation failure.
    pub fn at(self, x: f64) -> Error {
        match self {
            // Already carries a location.
            Error::Pole { .. } | Error::At { .. } => self,
            other => Error::At {
                x,
                source: Box::new(other),
            },
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what } => write!(f, "domain error: {what}"),
            Error::NonConvergence { what, terms } => {
                write!(f, "{what} did not converge within {terms} terms")
            }
            Error::Pole { what, x } => write!(f, "pole of {what} near x = {x}"),
            Error::Divergence { a, b } => {
                write!(f, "quadrature exceeded max depth on [{a}, {b}]")
            }
            Error::ZeroNorm => write!(f, "normalization integral vanishes"),
            Error::Grid { what } => write!(f, "grid error: {what}"),
            Error::At { x, source } => write!(f, "at x = {x}: {source}"),
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::At { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}

//! Evaluatable scalar functions that produce derivative jets on demand.

use crate::error::{Error, Result};
use crate::jet::Jet;
use alloc::sync::Arc;

/// A real function of x that can report its value and derivatives at any
/// point of its domain. Implementations are immutable and shareable across
/// threads.
pub trait ScalarField: Send + Sync {
    /// Value and derivatives up to `order` at `x`.
    fn jet(&self, x: f64, order: usize) -> Result<Jet>;

    fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.jet(x, 0)?.value())
    }
}

pub type FieldRef = Arc<dyn ScalarField>;

/// Pole guard for quotients: flags x as (too close to) a zero of f when
/// |f(x)| is negligible against the local magnitude |f(x)| + |x·f′(x)|.
pub(crate) fn check_nonzero(j: &Jet, what: &'static str) -> Result<()> {
    let value = libm::fabs(j.value());
    let scale = value + libm::fabs(j.x() * j.deriv(1));
    if value <= 1e-14 * scale {
        Err(Error::Pole { what, x: j.x() })
    } else {
        Ok(())
    }
}

/// f scaled by a constant factor.
pub struct Scaled {
    inner: FieldRef,
    factor: f64,
}

impl Scaled {
    pub fn new(inner: FieldRef, factor: f64) -> Scaled {
        Scaled { inner, factor }
    }
}

impl ScalarField for Scaled {
    fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        Ok(self.inner.jet(x, order)?.scale(self.factor))
    }
}

/// f shifted by a constant: x ↦ f(x) + shift.
pub struct Offset {
    inner: FieldRef,
    shift: f64,
}

impl Offset {
    pub fn new(inner: FieldRef, shift: f64) -> Offset {
        Offset { inner, shift }
    }
}

impl ScalarField for Offset {
    fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        let j = self.inner.jet(x, order)?;
        let mut coeffs = j.coeffs().to_vec();
        coeffs[0] += self.shift;
        Ok(Jet::new(x, coeffs))
    }
}

/// The logarithmic derivative f′/f, formed as a jet-level quotient (no
/// literal logarithm, so negative f is harmless).
pub struct LogDerivative {
    inner: FieldRef,
    what: &'static str,
}

impl LogDerivative {
    pub fn new(inner: FieldRef, what: &'static str) -> LogDerivative {
        LogDerivative { inner, what }
    }
}

impl ScalarField for LogDerivative {
    fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        let j = self.inner.jet(x, order + 1)?;
        check_nonzero(&j, self.what)?;
        Ok(&j.derivative() / &j.truncate(order))
    }
}

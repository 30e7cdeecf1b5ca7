//! Kummer's confluent hypergeometric function M(a,b,x), generalized
//! (real-index) associated Laguerre functions and X1 exceptional Laguerre
//! functions, all with analytic derivatives.
//!
//! Derivatives come from the contiguous identity dM/dx = (a/b) M(a+1,b+1,x)
//! applied recursively, never from numerical differentiation, so that
//! Wronskians built on top keep full precision.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::gamma::{gamma, is_nonpositive_integer, rgamma};
use crate::jet::Jet;
use alloc::vec::Vec;

/// Largest derivative order the series backend will produce.
pub const MAX_JET_ORDER: usize = 8;

/// Relative stopping tolerance of the defining series.
const SERIES_REL_TOL: f64 = 1e-15;

/// Hard cap on series terms before a non-convergence error.
const SERIES_MAX_TERMS: usize = 1000;

/// Index pair of a generalized Laguerre function: lower index `nu` (may be
/// any real) and upper index `alpha` (here l + 1/2), with `alpha > -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreIndex {
    pub nu: f64,
    pub alpha: f64,
}

impl LaguerreIndex {
    pub fn new(nu: f64, alpha: f64) -> LaguerreIndex {
        LaguerreIndex { nu, alpha }
    }

    fn shifted(self, by: f64) -> LaguerreIndex {
        LaguerreIndex {
            nu: self.nu + by,
            alpha: self.alpha,
        }
    }
}

// Polynomial case (a a nonpositive integer): the alternating terms cancel
// hard, so run the finite sum in double-double to stay at the 1e-14 level.
fn kummer_series_terminating(degree: usize, a: f64, b: f64, x: f64) -> f64 {
    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    for k in 0..degree {
        let kf = k as f64;
        term = term
            .mul_f64(a + kf)
            .mul_f64(x)
            .div_f64(b + kf)
            .div_f64(kf + 1.0);
        sum = sum.add(term);
    }
    sum.value()
}

fn kummer_series(a: f64, b: f64, x: f64) -> Result<f64> {
    if is_nonpositive_integer(a) && -a < SERIES_MAX_TERMS as f64 {
        return Ok(kummer_series_terminating(-a as usize, a, b, x));
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        if !sum.is_finite() {
            break;
        }
        // non-strict so an exactly-zero term (a sum that lands on zero)
        // still fires the rule
        if libm::fabs(term) <= SERIES_REL_TOL * libm::fabs(sum) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "Kummer series",
        terms: SERIES_MAX_TERMS,
    })
}

/// M(a,b,x) and its derivatives up to `order`.
///
/// The series is truncated once a term falls below 1e-15 of the partial sum,
/// with a hard cap of 1000 terms. `b` must not be a nonpositive integer and
/// `x` must be nonnegative.
pub fn kummer_m(a: f64, b: f64, x: f64, order: usize) -> Result<Jet> {
    if is_nonpositive_integer(b) {
        return Err(Error::Domain {
            what: "Kummer b must not be a nonpositive integer",
        });
    }
    if x < 0.0 {
        return Err(Error::Domain {
            what: "Kummer argument must be nonnegative",
        });
    }
    if order > MAX_JET_ORDER {
        return Err(Error::Domain {
            what: "requested derivative order exceeds the series backend cap",
        });
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut prefactor = 1.0_f64;
    for j in 0..=order {
        let jf = j as f64;
        coeffs.push(prefactor * kummer_series(a + jf, b + jf, x)?);
        prefactor *= (a + jf) / (b + jf);
    }
    Ok(Jet::new(x, coeffs))
}

/// Generalized Laguerre function L_ν^α(x) with derivatives up to `order`,
/// realized as Γ(ν+α+1)/(Γ(ν+1)Γ(α+1)) · M(−ν, α+1, x).
///
/// The reciprocal of Γ(ν+1) is taken through a pole-aware routine that
/// returns 0 at negative integer ν, so L₋₁ ≡ 0 emerges automatically.
pub fn laguerre(idx: LaguerreIndex, x: f64, order: usize) -> Result<Jet> {
    if idx.alpha <= -1.0 {
        return Err(Error::Domain {
            what: "Laguerre upper index must exceed -1",
        });
    }
    if is_nonpositive_integer(idx.nu + idx.alpha + 1.0) {
        return Err(Error::Domain {
            what: "Laguerre prefactor pole: nu + alpha + 1 is a nonpositive integer",
        });
    }
    let recip_nu = rgamma(idx.nu + 1.0);
    if recip_nu == 0.0 {
        // negative integer lower index: identically zero
        return Ok(Jet::constant(x, 0.0, order));
    }
    let prefactor = gamma(idx.nu + idx.alpha + 1.0) * recip_nu * rgamma(idx.alpha + 1.0);
    Ok(kummer_m(-idx.nu, idx.alpha + 1.0, x, order)?.scale(prefactor))
}

/// X1 exceptional Laguerre function
/// 𝓛_ν^k(x) = −(x + k + 1)·L_{ν−1}^k(x) + L_{ν−2}^k(x),
/// combined at jet level so the linear factor enters through the product
/// rule.
pub fn x1_laguerre(idx: LaguerreIndex, x: f64, order: usize) -> Result<Jet> {
    let first = laguerre(idx.shifted(-1.0), x, order)?;
    let second = laguerre(idx.shifted(-2.0), x, order)?;
    let linear = Jet::affine(x, -1.0, -(idx.alpha + 1.0), order);
    Ok(&(&linear * &first) + &second)
}

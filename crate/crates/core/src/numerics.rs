//! Shared numerical services: adaptive quadrature, finite-difference
//! derivative oracles and normalization.

use crate::error::{Error, Result};
use crate::field::{FieldRef, ScalarField, Scaled};
use alloc::sync::Arc;

/// Maximum bisection depth of the adaptive quadrature.
const MAX_DEPTH: usize = 40;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub panels: usize,
}

struct PanelState<'a, F> {
    f: &'a F,
    // per-panel acceptance threshold is abs_tol * width / total_width
    tol_per_width: f64,
    value: f64,
    error: f64,
    panels: usize,
}

/// ∫ₐᵇ f dx by adaptive Simpson bisection: a panel is accepted once its
/// Richardson error estimate drops below `abs_tol` scaled by the panel's
/// share of the interval. The returned value includes the Richardson
/// correction, making the rule exact through degree five.
pub fn integrate<F>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    if !a.is_finite() || !b.is_finite() || b <= a {
        return Err(Error::Grid {
            what: "integration bounds must satisfy a < b",
        });
    }
    if !abs_tol.is_finite() || abs_tol <= 0.0 {
        return Err(Error::Grid {
            what: "integration tolerance must be positive",
        });
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    for (x, v) in [(a, fa), (m, fm), (b, fb)] {
        if !v.is_finite() {
            return Err(Error::At {
                x,
                source: alloc::boxed::Box::new(Error::Grid {
                    what: "integrand is not finite",
                }),
            });
        }
    }
    let mut state = PanelState {
        f: &f,
        tol_per_width: abs_tol / (b - a),
        value: 0.0,
        error: 0.0,
        panels: 0,
    };
    let whole = simpson(a, b, fa, fm, fb);
    refine(&mut state, a, b, fa, fm, fb, whole, 0)?;
    Ok(QuadratureResult {
        value: state.value,
        abs_error_estimate: state.error,
        panels: state.panels,
    })
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    state: &mut PanelState<'_, F>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    depth: usize,
) -> Result<()>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = (state.f)(lm)?;
    let frm = (state.f)(rm)?;
    if !flm.is_finite() || !frm.is_finite() {
        return Err(Error::At {
            x: if flm.is_finite() { rm } else { lm },
            source: alloc::boxed::Box::new(Error::Grid {
                what: "integrand is not finite",
            }),
        });
    }
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let est = (left + right - whole) / 15.0;
    if libm::fabs(est) <= state.tol_per_width * (b - a) {
        state.value += left + right + est;
        state.error += libm::fabs(est);
        state.panels += 1;
        return Ok(());
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Divergence { a, b });
    }
    refine(state, a, m, fa, flm, fm, left, depth + 1)?;
    refine(state, m, b, fm, frm, fb, right, depth + 1)
}

/// First or second derivative of `f` at `x` by 4th-order central stencils
/// with step h = 1e-5·max(1, |x|). An independent oracle for the analytic
/// jet entries; the caller compares magnitudes.
pub fn fd_derivative<F>(f: F, x: f64, order: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = 1e-5 * libm::fabs(x).max(1.0);
    let f2p = f(x + 2.0 * h)?;
    let f1p = f(x + h)?;
    let f1m = f(x - h)?;
    let f2m = f(x - 2.0 * h)?;
    match order {
        1 => Ok((-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h)),
        2 => {
            let f0 = f(x)?;
            Ok((-f2p + 16.0 * f1p - 30.0 * f0 + 16.0 * f1m - f2m) / (12.0 * h * h))
        }
        _ => Err(Error::Domain {
            what: "finite-difference stencils exist for orders 1 and 2 only",
        }),
    }
}

/// Discrepancy between the analytic jet derivative of `f` at `x` and the
/// finite-difference stencil, normalized by the larger of the two entries
/// and the local function magnitude (so nodes of the derivative do not blow
/// the ratio up).
pub fn jet_fd_discrepancy(f: &dyn ScalarField, x: f64, order: usize) -> Result<f64> {
    let analytic = f.jet(x, order)?.deriv(order);
    let fd = fd_derivative(|t| f.eval(t), x, order)?;
    let h = 1e-5 * libm::fabs(x).max(1.0);
    let mut scale = libm::fabs(analytic).max(libm::fabs(fd));
    for &t in &[x - 2.0 * h, x - h, x, x + h, x + 2.0 * h] {
        scale = scale.max(libm::fabs(f.eval(t)?));
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(libm::fabs(analytic - fd) / scale)
}

fn squared_integral(fields: &[&FieldRef], a: f64, b: f64) -> Result<f64> {
    let density = |x: f64| {
        let mut s = 0.0;
        for f in fields {
            let v = f.eval(x)?;
            s += v * v;
        }
        Ok(s)
    };
    // coarse pass fixes the magnitude, fine pass the accuracy
    let rough = integrate(density, a, b, 1e-6)?;
    let tol = 1e-13 * libm::fabs(rough.value).max(1.0);
    Ok(integrate(density, a, b, tol)?.value)
}

/// Scaled copy of `f` whose squared magnitude integrates to one over (a, b),
/// together with the norm that was divided out.
pub fn normalize_field(f: FieldRef, a: f64, b: f64) -> Result<(FieldRef, f64)> {
    let integral = squared_integral(&[&f], a, b)?;
    if integral <= 1e-300 {
        return Err(Error::ZeroNorm);
    }
    let norm = libm::sqrt(integral);
    Ok((Arc::new(Scaled::new(f, 1.0 / norm)), norm))
}

/// Pair version of [`normalize_field`]: both components are scaled by the
/// same factor so that ∫(f² + g²) = 1.
pub fn normalize_pair(
    f: FieldRef,
    g: FieldRef,
    a: f64,
    b: f64,
) -> Result<(FieldRef, FieldRef, f64)> {
    let integral = squared_integral(&[&f, &g], a, b)?;
    if integral <= 1e-300 {
        return Err(Error::ZeroNorm);
    }
    let norm = libm::sqrt(integral);
    Ok((
        Arc::new(Scaled::new(f, 1.0 / norm)),
        Arc::new(Scaled::new(g, 1.0 / norm)),
        norm,
    ))
}

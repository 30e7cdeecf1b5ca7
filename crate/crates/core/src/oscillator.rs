//! The initial solvable model: the rationally extended radial oscillator,
//! its bound states and its spectrum.
//!
//! The potential is
//!
//! V₀(x) = ¼ω²x² + l(l+1)/x² + 4ω/(ωx²+2l+1) − 8ω(2l+1)/(ωx²+2l+1)²
//!
//! on x > 0, with discrete energies εₙ = ω(2n + l + 3/2) and bound states
//!
//! ψₙ(x) = x^{l+1}/(ωx²+2l+1) · exp(−¼ωx²) · 𝓛_{n+1}^{l+1/2}(½ωx²),
//!
//! where 𝓛 is the X1 exceptional Laguerre function. The state index n is a
//! real number throughout: nonnegative integers give the physical bound
//! states, while auxiliary constructions use indices such as −1/2 or
//! −l/2 − 3/4.

use crate::error::{Error, Result};
use crate::field::{FieldRef, ScalarField};
use crate::jet::Jet;
use crate::numerics::normalize_field;
use crate::specfun::{x1_laguerre, LaguerreIndex};
use alloc::sync::Arc;
use alloc::vec::Vec;

/// Parameters of the oscillator/Dirac model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Oscillator frequency ω > 0.
    pub omega: f64,
    /// Angular momentum quantum number.
    pub l: u32,
    /// Dirac mass m ≥ 0.
    pub mass: f64,
    /// State or auxiliary index.
    pub n: f64,
}

impl ModelParams {
    pub fn new(omega: f64, l: u32, mass: f64, n: f64) -> Result<ModelParams> {
        if !omega.is_finite() || omega <= 0.0 {
            return Err(Error::Domain {
                what: "omega must be positive",
            });
        }
        if !mass.is_finite() || mass < 0.0 {
            return Err(Error::Domain {
                what: "mass must be nonnegative",
            });
        }
        if !n.is_finite() {
            return Err(Error::Domain {
                what: "state index must be finite",
            });
        }
        Ok(ModelParams { omega, l, mass, n })
    }

    /// Same model with a different state index.
    pub fn with_n(&self, n: f64) -> ModelParams {
        ModelParams { n, ..*self }
    }
}

/// A strictly increasing evaluation grid on the positive half line.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

impl Grid {
    /// `count` equally spaced points from `xmin` to `xmax` inclusive.
    pub fn linear(xmin: f64, xmax: f64, count: usize) -> Result<Grid> {
        if !xmin.is_finite() || !xmax.is_finite() || xmin <= 0.0 || xmax <= xmin {
            return Err(Error::Grid {
                what: "grid requires 0 < xmin < xmax",
            });
        }
        if count < 2 {
            return Err(Error::Grid {
                what: "grid requires at least two points",
            });
        }
        let span = xmax - xmin;
        let denom = (count - 1) as f64;
        let mut points: Vec<f64> = (0..count)
            .map(|i| xmin + span * (i as f64 / denom))
            .collect();
        // pin the endpoints exactly
        points[0] = xmin;
        points[count - 1] = xmax;
        Ok(Grid { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn xmin(&self) -> f64 {
        self.points[0]
    }

    pub fn xmax(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    pub fn count(&self) -> usize {
        self.points.len()
    }
}

/// The extended oscillator potential V₀ at x > 0.
pub fn potential_v0(p: &ModelParams, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain {
            what: "potential is defined for x > 0",
        });
    }
    let omega = p.omega;
    let l = p.l as f64;
    let rat = omega * x * x + 2.0 * l + 1.0;
    Ok(
        0.25 * omega * omega * x * x + l * (l + 1.0) / (x * x) + 4.0 * omega / rat
            - 8.0 * omega * (2.0 * l + 1.0) / (rat * rat),
    )
}

/// εₙ = ω(2n + l + 3/2); n may be any real (auxiliary indices allowed).
pub fn energy(p: &ModelParams) -> f64 {
    p.omega * (2.0 * p.n + p.l as f64 + 1.5)
}

/// Truncation point beyond which the Gaussian factor makes half-line
/// integrals negligible: 12 for ω = 1, scaled by 1/√ω otherwise.
pub fn norm_cutoff(omega: f64) -> f64 {
    12.0 / libm::sqrt(omega)
}

struct Eigenfunction {
    params: ModelParams,
}

impl ScalarField for Eigenfunction {
    fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        let omega = self.params.omega;
        let l = self.params.l;
        let idx = LaguerreIndex::new(self.params.n + 1.0, l as f64 + 0.5);

        let t = Jet::identity(x, order);
        let t2 = t.powi(2);
        // u = ω x² / 2 feeds the Laguerre factor through the chain rule
        let u = t2.scale(0.5 * omega);
        let lag_outer = x1_laguerre(idx, u.value(), order)?;
        let lag = Jet::compose(&lag_outer, &u);

        let power = t.powi(l + 1);
        let rational = Jet::affine(x, 0.0, 2.0 * l as f64 + 1.0, order);
        let rational = (&t2.scale(omega) + &rational).recip();
        let gauss = t2.scale(-0.25 * omega).exp();

        Ok(&(&(&power * &rational) * &gauss) * &lag)
    }
}

/// The bound (or auxiliary) state ψₙ as an evaluatable field, unnormalized.
pub fn eigenfunction(p: &ModelParams) -> FieldRef {
    Arc::new(Eigenfunction { params: *p })
}

/// ψₙ scaled to unit L² norm over (0, [`norm_cutoff`]).
pub fn normalized_eigenfunction(p: &ModelParams) -> Result<FieldRef> {
    let raw = eigenfunction(p);
    let (field, _) = normalize_field(raw, 1e-6, norm_cutoff(p.omega))?;
    Ok(field)
}

/// Max |f″ + (ε − V)f| over the grid, normalized by the larger of the peak
/// |f″| and peak |εf| so the result is scale free.
pub fn schrodinger_residual<F>(
    f: &dyn ScalarField,
    epsilon: f64,
    potential: F,
    grid: &Grid,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for &x in grid.points() {
        let j = f.jet(x, 2).map_err(|e| e.at(x))?;
        let v = potential(x).map_err(|e| e.at(x))?;
        let residual = j.deriv(2) + (epsilon - v) * j.value();
        worst = worst.max(libm::fabs(residual));
        scale = scale
            .max(libm::fabs(j.deriv(2)))
            .max(libm::fabs(epsilon * j.value()));
    }
    Ok(worst / scale.max(1e-300))
}

//! Pseudoscalar and scalar Dirac potentials parametrized by a Riccati
//! solution q, the map from Schrödinger solutions to spinors, and the
//! residual check of the first-order 2×2 system.
//!
//! With iσ₂ = [[0, 1], [−1, 0]] the system i σ₂ Ψ′ + (U − E) Ψ = 0 splits
//! into two scalar rows. For the pseudoscalar potential U = m σ₃ + q σ₁:
//!
//! row 1:  Ψ₂′ + (m − E) Ψ₁ + q Ψ₂ = 0
//! row 2: −Ψ₁′ + q Ψ₁ − (m + E) Ψ₂ = 0
//!
//! The scalar potential U = f σ₁ drops the σ₃ mass term and replaces q by
//! the σ₁ coefficient f, with |E| = √ε instead of √(ε + m²). Row 2 is
//! identically satisfied by the construction of Ψ₂; the genuine content of
//! the residual is row 1.

use crate::error::{Error, Result};
use crate::field::{FieldRef, ScalarField};
use crate::jet::Jet;
use crate::numerics::normalize_pair;
use crate::oscillator::{energy, Grid, ModelParams};
use alloc::sync::Arc;

/// Which 2×2 potential shape a parametrizing function feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    /// m·σ₃ + q(x)·σ₁
    Pseudoscalar,
    /// f(x)·σ₁ with the mass absorbed into the coefficient
    Scalar,
}

/// Sign branch of the Dirac energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergySign {
    Positive,
    Negative,
}

impl EnergySign {
    pub fn apply(self, magnitude: f64) -> f64 {
        match self {
            EnergySign::Positive => magnitude,
            EnergySign::Negative => -magnitude,
        }
    }
}

/// A 2×2 Dirac potential: m·σ₃ + q·σ₁ (pseudoscalar) or q·σ₁ (scalar; the
/// field then carries the full coefficient m + S).
pub struct DiracPotential {
    pub kind: PotentialKind,
    pub mass: f64,
    pub q: FieldRef,
}

impl DiracPotential {
    pub fn pseudoscalar(mass: f64, q: FieldRef) -> DiracPotential {
        DiracPotential {
            kind: PotentialKind::Pseudoscalar,
            mass,
            q,
        }
    }

    pub fn scalar(mass: f64, coefficient: FieldRef) -> DiracPotential {
        DiracPotential {
            kind: PotentialKind::Scalar,
            mass,
            q: coefficient,
        }
    }
}

/// A two-component solution with its energy.
#[derive(Clone)]
pub struct Spinor {
    pub psi1: FieldRef,
    pub psi2: FieldRef,
    pub energy: f64,
}

impl Spinor {
    /// Copy rescaled so that ∫(|Ψ₁|² + |Ψ₂|²) = 1 over (a, b).
    pub fn normalized(&self, a: f64, b: f64) -> Result<Spinor> {
        let (psi1, psi2, _) = normalize_pair(self.psi1.clone(), self.psi2.clone(), a, b)?;
        Ok(Spinor {
            psi1,
            psi2,
            energy: self.energy,
        })
    }

    /// |Ψ₁|² + |Ψ₂|² as a field.
    pub fn density(&self) -> FieldRef {
        struct Density {
            psi1: FieldRef,
            psi2: FieldRef,
        }
        impl ScalarField for Density {
            fn jet(&self, x: f64, order: usize) -> Result<Jet> {
                let a = self.psi1.jet(x, order)?;
                let b = self.psi2.jet(x, order)?;
                Ok(&a.powi(2) + &b.powi(2))
            }
        }
        Arc::new(Density {
            psi1: self.psi1.clone(),
            psi2: self.psi2.clone(),
        })
    }
}

/// Eₙ = sign·√(m² + εₙ) with εₙ from the oscillator spectrum.
pub fn dirac_energy(p: &ModelParams, sign: EnergySign) -> Result<f64> {
    let radicand = p.mass * p.mass + energy(p);
    if radicand < 0.0 {
        return Err(Error::Domain {
            what: "negative radicand: mass^2 + epsilon must be nonnegative",
        });
    }
    Ok(sign.apply(libm::sqrt(radicand)))
}

/// Eₙ = sign·√εₙ for the scalar kind, where ε = E² (the mass sits in the
/// σ₁ coefficient instead).
pub fn scalar_dirac_energy(p: &ModelParams, sign: EnergySign) -> Result<f64> {
    let eps = energy(p);
    if eps < 0.0 {
        return Err(Error::Domain {
            what: "negative epsilon: the scalar kind needs epsilon = E^2 >= 0",
        });
    }
    Ok(sign.apply(libm::sqrt(eps)))
}

struct LowerComponent {
    psi1: FieldRef,
    coefficient: FieldRef,
    denominator: f64,
}

impl ScalarField for LowerComponent {
    fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        let p = self.psi1.jet(x, order + 1)?;
        let c = self.coefficient.jet(x, order)?;
        let combination = &(&c * &p.truncate(order)) - &p.derivative();
        Ok(combination.scale(1.0 / self.denominator))
    }
}

/// Builds the spinor (Ψ₁, Ψ₂) from a Schrödinger solution:
/// Ψ₁ = ψ and Ψ₂ = (qΨ₁ − Ψ₁′)/(E + m) for the pseudoscalar kind, or
/// Ψ₂ = (fΨ₁ − Ψ₁′)/E for the scalar kind (f the σ₁ coefficient).
pub fn spinor_from_schrodinger(
    psi: FieldRef,
    q: FieldRef,
    mass: f64,
    e: f64,
    kind: PotentialKind,
) -> Result<Spinor> {
    let denominator = match kind {
        PotentialKind::Pseudoscalar => e + mass,
        PotentialKind::Scalar => e,
    };
    if libm::fabs(denominator) < 1e-300 {
        return Err(Error::Domain {
            what: "spinor map divides by E + m (pseudoscalar) or E (scalar)",
        });
    }
    Ok(Spinor {
        psi1: psi.clone(),
        psi2: Arc::new(LowerComponent {
            psi1: psi,
            coefficient: q,
            denominator,
        }),
        energy: e,
    })
}

/// Both scalar rows of the residual, each maxed over the grid and
/// normalized by the peak magnitude of the system's derivative and energy
/// terms.
pub fn dirac_residual_rows(
    spinor: &Spinor,
    potential: &DiracPotential,
    grid: &Grid,
) -> Result<(f64, f64)> {
    let e = spinor.energy;
    let mut worst = (0.0_f64, 0.0_f64);
    let mut scale = 0.0_f64;
    for &x in grid.points() {
        let p1 = spinor.psi1.jet(x, 1).map_err(|err| err.at(x))?;
        let p2 = spinor.psi2.jet(x, 1).map_err(|err| err.at(x))?;
        let q = potential.q.eval(x).map_err(|err| err.at(x))?;
        let (row1, row2) = match potential.kind {
            PotentialKind::Pseudoscalar => {
                let m = potential.mass;
                (
                    p2.deriv(1) + (m - e) * p1.value() + q * p2.value(),
                    -p1.deriv(1) + q * p1.value() - (m + e) * p2.value(),
                )
            }
            PotentialKind::Scalar => (
                p2.deriv(1) - e * p1.value() + q * p2.value(),
                -p1.deriv(1) + q * p1.value() - e * p2.value(),
            ),
        };
        worst.0 = worst.0.max(libm::fabs(row1));
        worst.1 = worst.1.max(libm::fabs(row2));
        scale = scale
            .max(libm::fabs(p1.deriv(1)))
            .max(libm::fabs(p2.deriv(1)))
            .max(libm::fabs(e * p1.value()))
            .max(libm::fabs(e * p2.value()));
    }
    let scale = scale.max(1e-300);
    Ok((worst.0 / scale, worst.1 / scale))
}

/// Max relative residual over both rows and all grid points.
pub fn dirac_residual(spinor: &Spinor, potential: &DiracPotential, grid: &Grid) -> Result<f64> {
    let (row1, row2) = dirac_residual_rows(spinor, potential, grid)?;
    Ok(row1.max(row2))
}

/// The σ₁ coefficient of the scalar potential built from a Riccati solution
/// q: the coefficient is q itself, i.e. the scalar profile is S = q − m.
pub fn scalar_coefficient(q: FieldRef, _mass: f64) -> FieldRef {
    q
}

//! N-th order Darboux transformations via Wronskian quotients: transformed
//! solutions, the Crum potential shift, the transformed parametrizing
//! function q₁ and the transformed spinors.
//!
//! Given auxiliary solutions u₁,…,u_N of the initial equation at pairwise
//! different energies, the quotient φ = W(u₁,…,u_N,ψ)/W(u₁,…,u_N) solves
//! the partner equation whose potential is shifted by Δ = 2·(d²/dx²) log W.
//! The first log-derivative of that shift is also provided as a negative
//! control; only the second-derivative form makes the residual suites pass.

use crate::dirac::{spinor_from_schrodinger, DiracPotential, PotentialKind, Spinor};
use crate::error::{Error, Result};
use crate::field::{check_nonzero, FieldRef, LogDerivative, ScalarField};
use crate::jet::Jet;
use crate::oscillator::{eigenfunction, energy, ModelParams};
use crate::riccati::{n_for_zero_energy, q_general, FamilyMode, RiccatiFamily};
use crate::specfun::MAX_JET_ORDER;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

/// Largest supported transformation order.
pub const MAX_ORDER: usize = 3;

/// An order-N transformation: auxiliary state indices n₁,…,n_N with their
/// derived energies λᵢ = ω(2nᵢ + l + 3/2).
#[derive(Debug, Clone)]
pub struct DarbouxConfig {
    order: usize,
    aux_indices: Vec<f64>,
    aux_energies: Vec<f64>,
    params: ModelParams,
}

impl DarbouxConfig {
    /// Validates and derives the auxiliary energies. The indices must be
    /// pairwise distinct (their energies are) and at most [`MAX_ORDER`] many.
    pub fn new(params: ModelParams, aux_indices: Vec<f64>) -> Result<DarbouxConfig> {
        let order = aux_indices.len();
        if order == 0 {
            return Err(Error::Domain {
                what: "a Darboux transformation needs at least one auxiliary index",
            });
        }
        if order > MAX_ORDER {
            return Err(Error::Domain {
                what: "transformation order exceeds the derivative-order cap",
            });
        }
        let aux_energies: Vec<f64> = aux_indices
            .iter()
            .map(|&n| energy(&params.with_n(n)))
            .collect();
        for i in 0..order {
            for j in 0..i {
                let scale = aux_energies[i].abs().max(aux_energies[j].abs()).max(1.0);
                if (aux_energies[i] - aux_energies[j]).abs() <= 1e-12 * scale {
                    return Err(Error::Domain {
                        what: "auxiliary energies must be pairwise distinct",
                    });
                }
            }
        }
        Ok(DarbouxConfig {
            order,
            aux_indices,
            aux_energies,
            params,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn aux_indices(&self) -> &[f64] {
        &self.aux_indices
    }

    pub fn aux_energies(&self) -> &[f64] {
        &self.aux_energies
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// The auxiliary solutions u₁,…,u_N as fields.
    pub fn aux_fields(&self) -> Vec<FieldRef> {
        self.aux_indices
            .iter()
            .map(|&n| eigenfunction(&self.params.with_n(n)))
            .collect()
    }
}

/// Which reading of the Crum potential shift to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrumReading {
    /// Δ = 2·(d²/dx²) log W — the form under which the partner equation
    /// holds.
    LogSecondDerivative,
    /// Δ = 2·(d/dx) log W — kept as a negative control; residuals stay
    /// large under this reading.
    LogFirstDerivative,
}

// A determinant of derivative rows, tracked as strictly increasing row
// indices with a multiplicity. Differentiating bumps one index at a time;
// collisions vanish.
#[derive(Debug, Clone)]
struct DetTerm {
    rows: Vec<usize>,
    coeff: f64,
}

fn differentiate_terms(terms: &[DetTerm]) -> Vec<DetTerm> {
    let mut out: Vec<DetTerm> = Vec::new();
    for term in terms {
        for i in 0..term.rows.len() {
            if i + 1 < term.rows.len() && term.rows[i] + 1 == term.rows[i + 1] {
                continue;
            }
            let mut rows = term.rows.clone();
            rows[i] += 1;
            match out.iter_mut().find(|t| t.rows == rows) {
                Some(existing) => existing.coeff += term.coeff,
                None => out.push(DetTerm {
                    rows,
                    coeff: term.coeff,
                }),
            }
        }
    }
    out
}

fn determinant(m: &[[f64; 4]; 4], size: usize) -> f64 {
    if size == 1 {
        return m[0][0];
    }
    let mut acc = 0.0;
    let mut sign = 1.0;
    for col in 0..size {
        let mut minor = [[0.0_f64; 4]; 4];
        for r in 1..size {
            let mut cc = 0;
            for c in 0..size {
                if c == col {
                    continue;
                }
                minor[r - 1][cc] = m[r][c];
                cc += 1;
            }
        }
        acc += sign * m[0][col] * determinant(&minor, size - 1);
        sign = -sign;
    }
    acc
}

/// The Wronskian W(f₁,…,f_L)(x) with derivatives up to `order`, obtained by
/// differentiating the determinant row-wise and expanding each resulting
/// determinant by cofactors (L ≤ 4).
pub fn wronskian_jet(fields: &[FieldRef], x: f64, order: usize) -> Result<Jet> {
    let size = fields.len();
    if size == 0 || size > 4 {
        return Err(Error::Domain {
            what: "Wronskian supports between one and four functions",
        });
    }
    if size - 1 + order > MAX_JET_ORDER {
        return Err(Error::Domain {
            what: "Wronskian derivative request exceeds the jet-order cap",
        });
    }
    let mut levels: Vec<Vec<DetTerm>> = Vec::with_capacity(order + 1);
    levels.push(vec![DetTerm {
        rows: (0..size).collect(),
        coeff: 1.0,
    }]);
    for _ in 0..order {
        let next = differentiate_terms(levels.last().unwrap());
        levels.push(next);
    }
    let max_row = size - 1 + order;
    let jets: Vec<Jet> = fields
        .iter()
        .map(|f| f.jet(x, max_row))
        .collect::<Result<_>>()?;

    let mut coeffs = Vec::with_capacity(order + 1);
    for level in &levels {
        let mut value = 0.0;
        for term in level {
            let mut m = [[0.0_f64; 4]; 4];
            for (r, &row) in term.rows.iter().enumerate() {
                for (c, jet) in jets.iter().enumerate() {
                    m[r][c] = jet.deriv(row);
                }
            }
            value += term.coeff * determinant(&m, size);
        }
        coeffs.push(value);
    }
    Ok(Jet::new(x, coeffs))
}

/// The Wronskian and its first two derivatives.
pub fn wronskian(fields: &[FieldRef], x: f64) -> Result<Jet> {
    wronskian_jet(fields, x, 2)
}

/// W(u₁,…,u_N) as a field, so callers can certify its nodelessness on a
/// working grid before dividing by it.
pub fn denominator_wronskian(cfg: &DarbouxConfig) -> FieldRef {
    struct Denominator(Vec<FieldRef>);
    impl ScalarField for Denominator {
        fn jet(&self, x: f64, order: usize) -> Result<Jet> {
            wronskian_jet(&self.0, x, order)
        }
    }
    Arc::new(Denominator(cfg.aux_fields()))
}

struct WronskianQuotient {
    // auxiliary functions followed by the target
    fields: Vec<FieldRef>,
}

impl ScalarField for WronskianQuotient {
    fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        let work = order.max(1);
        let numerator = wronskian_jet(&self.fields, x, work)?;
        let denominator = wronskian_jet(&self.fields[..self.fields.len() - 1], x, work)?;
        check_nonzero(&denominator, "Wronskian denominator")?;
        Ok((&numerator / &denominator).truncate(order))
    }
}

/// φ = W(aux…, target)/W(aux…) for explicitly supplied auxiliary fields.
pub fn darboux_quotient(aux: Vec<FieldRef>, target: FieldRef) -> Result<FieldRef> {
    if aux.is_empty() || aux.len() > MAX_ORDER {
        return Err(Error::Domain {
            what: "Darboux quotient needs between one and three auxiliary functions",
        });
    }
    let mut fields = aux;
    fields.push(target);
    Ok(Arc::new(WronskianQuotient { fields }))
}

/// The transformed solution φ = W(u₁,…,u_N,ψ)/W(u₁,…,u_N).
pub fn darboux_transform(psi: FieldRef, cfg: &DarbouxConfig) -> Result<FieldRef> {
    darboux_quotient(cfg.aux_fields(), psi)
}

struct CrumShiftField {
    aux: Vec<FieldRef>,
    reading: CrumReading,
}

impl ScalarField for CrumShiftField {
    fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        match self.reading {
            CrumReading::LogSecondDerivative => {
                let w = wronskian_jet(&self.aux, x, order + 2)?;
                check_nonzero(&w, "Wronskian")?;
                let log_deriv = &w.derivative() / &w.truncate(order + 1);
                Ok(log_deriv.derivative().scale(2.0))
            }
            CrumReading::LogFirstDerivative => {
                let w = wronskian_jet(&self.aux, x, order + 1)?;
                check_nonzero(&w, "Wronskian")?;
                Ok((&w.derivative() / &w.truncate(order)).scale(2.0))
            }
        }
    }
}

/// The potential shift Δ under the chosen reading; the transformed
/// Schrödinger potential is V₀ − Δ.
pub fn crum_shift_with(cfg: &DarbouxConfig, reading: CrumReading) -> FieldRef {
    Arc::new(CrumShiftField {
        aux: cfg.aux_fields(),
        reading,
    })
}

/// Δ = 2·(d²/dx²) log W(u₁,…,u_N), computed as 2·(W″/W − (W′/W)²).
pub fn crum_shift(cfg: &DarbouxConfig) -> FieldRef {
    crum_shift_with(cfg, CrumReading::LogSecondDerivative)
}

/// The transformed zero-energy seed q̂₁ = φ|_{ε=0}: the transform applied
/// to the oscillator state at n = −l/2 − 3/4.
pub fn transformed_seed(cfg: &DarbouxConfig) -> Result<FieldRef> {
    let n_zero = n_for_zero_energy(cfg.params.l);
    let seed = eigenfunction(&cfg.params.with_n(n_zero));
    darboux_transform(seed, cfg)
}

/// The transformed parametrizing function q₁. `Particular` takes the
/// logarithmic derivative of q̂₁; `General` routes q̂₁ through the Riccati
/// family with c = 0 anchored at xref = 1 (see [`transformed_q1_family`]
/// for explicit constants).
pub fn transformed_q1(cfg: &DarbouxConfig, fam_mode: FamilyMode) -> Result<FieldRef> {
    match fam_mode {
        FamilyMode::Particular => Ok(Arc::new(LogDerivative::new(
            transformed_seed(cfg)?,
            "transformed seed",
        ))),
        FamilyMode::General => transformed_q1_family(cfg, 0.0, 1.0),
    }
}

/// General-mode q₁ with an explicit family constant and reference point.
pub fn transformed_q1_family(cfg: &DarbouxConfig, c: f64, xref: f64) -> Result<FieldRef> {
    q_general(&RiccatiFamily {
        qhat: transformed_seed(cfg)?,
        c,
        xref,
        mode: FamilyMode::General,
    })
}

/// The transformed spinor: Φ₁ is the Darboux transform of ψₙ and Φ₂ the
/// kind-specific lower component built with q₁ in place of q₀.
pub fn transformed_spinor(
    cfg: &DarbouxConfig,
    p: &ModelParams,
    e: f64,
    kind: PotentialKind,
) -> Result<Spinor> {
    let eps = energy(p);
    for &lambda in &cfg.aux_energies {
        let scale = lambda.abs().max(eps.abs()).max(1.0);
        if (lambda - eps).abs() <= 1e-12 * scale {
            return Err(Error::Domain {
                what: "auxiliary energy coincides with the transformed state's energy",
            });
        }
    }
    let phi1 = darboux_transform(eigenfunction(p), cfg)?;
    let q1 = transformed_q1(cfg, FamilyMode::Particular)?;
    spinor_from_schrodinger(phi1, q1, p.mass, e, kind)
}

/// The transformed Dirac potential U₁ built on q₁ (particular mode).
pub fn transformed_potential(
    cfg: &DarbouxConfig,
    mass: f64,
    kind: PotentialKind,
) -> Result<DiracPotential> {
    let q1 = transformed_q1(cfg, FamilyMode::Particular)?;
    Ok(match kind {
        PotentialKind::Pseudoscalar => DiracPotential::pseudoscalar(mass, q1),
        PotentialKind::Scalar => DiracPotential::scalar(mass, q1),
    })
}

/// Closed form of the first-order transform, −(u₁′/u₁)ψ + ψ′. The
/// Wronskian-quotient path and this expression are mutual oracles.
pub fn first_order_closed_form(u1: FieldRef, psi: FieldRef) -> FieldRef {
    struct ClosedForm {
        u1: FieldRef,
        psi: FieldRef,
    }
    impl ScalarField for ClosedForm {
        fn jet(&self, x: f64, order: usize) -> Result<Jet> {
            let work = order.max(1);
            let u = self.u1.jet(x, work + 1)?;
            check_nonzero(&u, "auxiliary function")?;
            let p = self.psi.jet(x, work + 1)?;
            let log_deriv = &u.derivative() / &u.truncate(work);
            Ok(
                (&p.derivative().truncate(work) - &(&log_deriv * &p.truncate(work)))
                    .truncate(order),
            )
        }
    }
    Arc::new(ClosedForm { u1, psi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{dirac_energy, dirac_residual_rows, EnergySign};
    use crate::numerics::integrate;
    use crate::oscillator::{potential_v0, schrodinger_residual, Grid};
    use crate::riccati::{q_particular, riccati_residual, singularity_scan, zero_energy_seed};
    use alloc::vec;
    use approx::assert_relative_eq;

    fn params(n: f64) -> ModelParams {
        ModelParams::new(1.0, 1, 1.0, n).unwrap()
    }

    fn first_order_cfg(n1: f64) -> DarbouxConfig {
        DarbouxConfig::new(params(0.0), vec![n1]).unwrap()
    }

    struct Sin;
    struct Cos;

    impl ScalarField for Sin {
        fn jet(&self, x: f64, order: usize) -> Result<Jet> {
            let table = [libm::sin(x), libm::cos(x), -libm::sin(x), -libm::cos(x)];
            Ok(Jet::new(x, (0..=order).map(|k| table[k % 4]).collect()))
        }
    }

    impl ScalarField for Cos {
        fn jet(&self, x: f64, order: usize) -> Result<Jet> {
            let table = [libm::cos(x), -libm::sin(x), -libm::cos(x), libm::sin(x)];
            Ok(Jet::new(x, (0..=order).map(|k| table[k % 4]).collect()))
        }
    }

    #[test]
    fn wronskian_of_single_field_is_the_field() {
        let f: FieldRef = Arc::new(Sin);
        let w = wronskian(core::slice::from_ref(&f), 0.8).unwrap();
        let j = f.jet(0.8, 2).unwrap();
        assert_eq!(w.coeffs(), j.coeffs());
    }

    #[test]
    fn wronskian_of_repeated_field_vanishes() {
        let f: FieldRef = Arc::new(Sin);
        let w = wronskian(&[f.clone(), f.clone()], 1.3).unwrap();
        assert_eq!(w.value(), 0.0);
        assert_eq!(w.deriv(1), 0.0);
        assert_eq!(w.deriv(2), 0.0);
    }

    #[test]
    fn wronskian_of_sine_and_cosine() {
        // W(sin, cos) = -1, constant
        let w = wronskian(&[Arc::new(Sin) as FieldRef, Arc::new(Cos) as FieldRef], 0.6).unwrap();
        assert_relative_eq!(w.value(), -1.0, max_relative = 1e-12);
        assert!(w.deriv(1).abs() < 1e-12);
        assert!(w.deriv(2).abs() < 1e-12);
    }

    #[test]
    fn quotient_matches_closed_form_for_first_order() {
        let grid = Grid::linear(0.2, 8.0, 400).unwrap();
        for &n1 in &[-0.5, -0.02] {
            let cfg = first_order_cfg(n1);
            for n in 0..3u32 {
                let psi = eigenfunction(&params(n as f64));
                let u1 = eigenfunction(&params(n1));
                let quotient = darboux_transform(psi.clone(), &cfg).unwrap();
                let closed = first_order_closed_form(u1, psi);
                let mut peak = 0.0_f64;
                for &x in grid.points() {
                    peak = peak.max(quotient.eval(x).unwrap().abs());
                }
                for &x in grid.points() {
                    let a = quotient.eval(x).unwrap();
                    let b = closed.eval(x).unwrap();
                    assert!(
                        (a - b).abs() <= 1e-10 * peak.max(a.abs()).max(b.abs()),
                        "n={n} n1={n1} x={x}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_matches_the_expanded_product_form() {
        // third route: peeling the shared prefactor P = x^{l+1} e^{-wx²/4} /
        // (wx²+2l+1) off both states reduces the first-order transform to
        //   φ = ω x P(x) [𝓛_b′(u) − (𝓛_a′/𝓛_a)(u)·𝓛_b(u)],  u = ωx²/2,
        // with 𝓛_a the auxiliary and 𝓛_b the transformed state's Laguerre
        // factor; evaluated straight from the special-function jets with no
        // Wronskian machinery
        use crate::specfun::{x1_laguerre, LaguerreIndex};
        let omega = 1.0_f64;
        let l = 1u32;
        let k = l as f64 + 0.5;
        let idx_aux = LaguerreIndex::new(-0.5 + 1.0, k);
        for n in 0..3u32 {
            let cfg = first_order_cfg(-0.5);
            let psi = eigenfunction(&params(n as f64));
            let quotient = darboux_transform(psi, &cfg).unwrap();
            let idx_state = LaguerreIndex::new(n as f64 + 1.0, k);
            for &x in &[0.4, 1.1, 2.3, 4.0, 6.5] {
                let u = 0.5 * omega * x * x;
                let la = x1_laguerre(idx_aux, u, 1).unwrap();
                let lb = x1_laguerre(idx_state, u, 1).unwrap();
                let lf = l as f64;
                let prefactor = libm::pow(x, lf + 1.0) * libm::exp(-0.25 * omega * x * x)
                    / (omega * x * x + 2.0 * lf + 1.0);
                let expanded =
                    omega * x * prefactor * (lb.deriv(1) - la.deriv(1) / la.value() * lb.value());
                assert_relative_eq!(quotient.eval(x).unwrap(), expanded, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn transforming_with_the_state_itself_annihilates() {
        let cfg = DarbouxConfig::new(params(0.0), vec![0.0]).unwrap();
        let phi = darboux_transform(eigenfunction(&params(0.0)), &cfg).unwrap();
        for &x in Grid::linear(0.2, 8.0, 100).unwrap().points() {
            assert_eq!(phi.eval(x).unwrap(), 0.0);
        }
    }

    #[test]
    fn transformed_states_solve_the_shifted_equation() {
        let grid = Grid::linear(0.2, 8.0, 400).unwrap();
        let cfg = first_order_cfg(-0.5);
        let shift = crum_shift(&cfg);
        let p0 = params(0.0);
        for n in 0..3u32 {
            let p = params(n as f64);
            let phi = darboux_transform(eigenfunction(&p), &cfg).unwrap();
            let r = schrodinger_residual(
                phi.as_ref(),
                energy(&p),
                |x| Ok(potential_v0(&p0, x)? - shift.eval(x)?),
                &grid,
            )
            .unwrap();
            assert!(r < 1e-7, "n={n}: residual {r:e}");
        }
    }

    #[test]
    fn first_derivative_reading_fails_loudly() {
        let grid = Grid::linear(0.2, 8.0, 400).unwrap();
        let cfg = first_order_cfg(-0.5);
        let shift = crum_shift_with(&cfg, CrumReading::LogFirstDerivative);
        let p = params(0.0);
        let phi = darboux_transform(eigenfunction(&p), &cfg).unwrap();
        let r = schrodinger_residual(
            phi.as_ref(),
            energy(&p),
            |x| Ok(potential_v0(&p, x)? - shift.eval(x)?),
            &grid,
        )
        .unwrap();
        assert!(r > 1e-2, "negative control too small: {r:e}");
    }

    #[test]
    fn constant_auxiliary_gives_zero_shift() {
        struct One;
        impl ScalarField for One {
            fn jet(&self, x: f64, order: usize) -> Result<Jet> {
                Ok(Jet::constant(x, 1.0, order))
            }
        }
        let field = CrumShiftField {
            aux: vec![Arc::new(One) as FieldRef],
            reading: CrumReading::LogSecondDerivative,
        };
        for &x in &[0.5, 2.0, 7.0] {
            assert_eq!(field.eval(x).unwrap(), 0.0);
        }
    }

    #[test]
    fn transformed_q1_satisfies_the_shifted_riccati_equation() {
        let grid = Grid::linear(0.2, 8.0, 400).unwrap();
        let cfg = first_order_cfg(-0.5);
        let q1 = transformed_q1(&cfg, FamilyMode::Particular).unwrap();
        let shift = crum_shift(&cfg);
        let p = params(0.0);
        let r = riccati_residual(
            q1.as_ref(),
            |x| Ok(potential_v0(&p, x)? - shift.eval(x)?),
            &grid,
        )
        .unwrap();
        assert!(r < 1e-7, "residual {r:e}");
    }

    #[test]
    fn transformed_q1_is_regular() {
        let grid = Grid::linear(0.1, 8.0, 1000).unwrap();
        let cfg = first_order_cfg(-0.5);
        let seed = transformed_seed(&cfg).unwrap();
        assert!(singularity_scan(seed.as_ref(), &grid).unwrap().is_empty());
        let q1 = transformed_q1(&cfg, FamilyMode::Particular).unwrap();
        for &x in grid.points() {
            assert!(q1.eval(x).unwrap().is_finite());
        }
    }

    #[test]
    fn transformed_slope_approaches_initial_slope() {
        // the potential shift decays, so q1/x closes in on q0/x; frozen from
        // direct evaluation: the gap shrinks monotonically across [6, 12]
        // and is below 1e-2 by x = 12
        let cfg = first_order_cfg(-0.5);
        let q1 = transformed_q1(&cfg, FamilyMode::Particular).unwrap();
        let q0 = q_particular(zero_energy_seed(1.0, 1).unwrap());
        let mut prev_gap = f64::INFINITY;
        for i in 0..=12 {
            let x = 6.0 + 0.5 * i as f64;
            let gap = (q1.eval(x).unwrap() / x - q0.eval(x).unwrap() / x).abs();
            assert!(gap < prev_gap, "gap not shrinking at x={x}");
            prev_gap = gap;
        }
        assert!(prev_gap < 1e-2, "gap at x=12: {prev_gap}");
    }

    #[test]
    fn transformed_spinors_keep_the_spectrum() {
        let grid = Grid::linear(0.2, 8.0, 400).unwrap();
        let cfg = first_order_cfg(-0.5);
        let potential = transformed_potential(&cfg, 1.0, PotentialKind::Pseudoscalar).unwrap();
        for n in 0..3u32 {
            let p = params(n as f64);
            let e = dirac_energy(&p, EnergySign::Positive).unwrap();
            let spinor = transformed_spinor(&cfg, &p, e, PotentialKind::Pseudoscalar).unwrap();
            let (row1, row2) = dirac_residual_rows(&spinor, &potential, &grid).unwrap();
            assert!(row1 < 1e-7, "n={n}: row1 {row1:e}");
            assert!(row2 < 1e-12, "n={n}: row2 {row2:e}");
        }
    }

    #[test]
    fn transformed_spinor_decays_and_normalizes() {
        let grid = Grid::linear(0.2, 8.0, 400).unwrap();
        let cfg = first_order_cfg(-0.5);
        let p = params(0.0);
        let e = dirac_energy(&p, EnergySign::Positive).unwrap();
        let spinor = transformed_spinor(&cfg, &p, e, PotentialKind::Pseudoscalar).unwrap();
        // the lower component peaks later than the upper one and reaches
        // 1e-4 of its maximum just past x = 8 (measured 1.4e-4 at 8)
        for component in [&spinor.psi1, &spinor.psi2] {
            let mut peak = 0.0_f64;
            for &x in grid.points() {
                peak = peak.max(component.eval(x).unwrap().abs());
            }
            assert!(component.eval(8.5).unwrap().abs() < 1e-4 * peak);
        }
        let normalized = spinor.normalized(1e-6, 12.0).unwrap();
        let density = normalized.density();
        let total = integrate(|x| density.eval(x), 1e-6, 12.0, 1e-10).unwrap();
        assert_relative_eq!(total.value, 1.0, max_relative = 1e-8);
    }

    #[test]
    fn second_order_quotient_matches_iterated_transforms() {
        let grid = Grid::linear(0.2, 8.0, 400).unwrap();
        let (n1, n2) = (1.5, 1.25);
        let u1 = eigenfunction(&params(n1));
        let u2 = eigenfunction(&params(n2));
        for n in 0..2u32 {
            let psi = eigenfunction(&params(n as f64));
            let direct = darboux_quotient(vec![u1.clone(), u2.clone()], psi.clone()).unwrap();
            let step1 = darboux_quotient(vec![u1.clone()], psi.clone()).unwrap();
            let u2_transformed = darboux_quotient(vec![u1.clone()], u2.clone()).unwrap();
            let iterated = darboux_quotient(vec![u2_transformed], step1).unwrap();
            let mut peak = 0.0_f64;
            for &x in grid.points() {
                peak = peak.max(direct.eval(x).unwrap().abs());
            }
            for &x in grid.points() {
                let a = direct.eval(x).unwrap();
                let b = iterated.eval(x).unwrap();
                assert!(
                    (a - b).abs() <= 1e-8 * peak,
                    "n={n} x={x}: direct {a} vs iterated {b}"
                );
            }
        }
    }

    #[test]
    fn second_order_q1_is_regular() {
        let grid = Grid::linear(0.1, 8.0, 1000).unwrap();
        let cfg = DarbouxConfig::new(params(0.0), vec![1.5, 1.25]).unwrap();
        let seed = transformed_seed(&cfg).unwrap();
        assert!(singularity_scan(seed.as_ref(), &grid).unwrap().is_empty());
        let q1 = transformed_q1(&cfg, FamilyMode::Particular).unwrap();
        for &x in grid.points() {
            assert!(q1.eval(x).unwrap().is_finite());
        }
    }

    #[test]
    fn deformation_grows_as_the_auxiliary_energy_approaches_the_ground_state() {
        let grid = Grid::linear(0.5, 6.0, 300).unwrap();
        let q0 = q_particular(zero_energy_seed(1.0, 1).unwrap());
        let mut previous = 0.0_f64;
        for &n1 in &[-0.5, -0.02, -1e-4] {
            let cfg = first_order_cfg(n1);
            let q1 = transformed_q1(&cfg, FamilyMode::Particular).unwrap();
            let mut distance = 0.0_f64;
            for &x in grid.points() {
                distance = distance.max((q1.eval(x).unwrap() - q0.eval(x).unwrap()).abs());
            }
            assert!(
                distance > previous,
                "n1={n1}: distance {distance} did not grow past {previous}"
            );
            previous = distance;
        }
    }

    #[test]
    fn config_rejects_degenerate_and_oversized_requests() {
        assert!(DarbouxConfig::new(params(0.0), vec![]).is_err());
        assert!(DarbouxConfig::new(params(0.0), vec![-0.5, -0.5]).is_err());
        assert!(DarbouxConfig::new(params(0.0), vec![0.5, 1.0, 1.5, 2.0]).is_err());
    }

    #[test]
    fn spinor_of_an_annihilated_state_is_rejected_by_energy_guard() {
        let cfg = DarbouxConfig::new(params(0.0), vec![0.0]).unwrap();
        let p = params(0.0);
        let e = dirac_energy(&p, EnergySign::Positive).unwrap();
        assert!(matches!(
            transformed_spinor(&cfg, &p, e, PotentialKind::Pseudoscalar),
            Err(Error::Domain { .. })
        ));
    }
}

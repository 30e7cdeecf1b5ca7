//! Implementations of the curve and table commands.

use crate::config::RunConfig;
use crate::table::Table;
use crate::{CliError, CliResult};
use darboux_dirac::darboux::{
    darboux_transform, denominator_wronskian, transformed_q1, transformed_seed, DarbouxConfig,
};
use darboux_dirac::dirac::{
    dirac_energy, scalar_dirac_energy, spinor_from_schrodinger, PotentialKind, Spinor,
};
use darboux_dirac::oscillator::{eigenfunction, energy, norm_cutoff, Grid};
use darboux_dirac::riccati::{
    family_denominator_scan, q_general, q_particular, singularity_scan, zero_energy_seed,
    FamilyMode, RiccatiFamily,
};
use darboux_dirac::{FieldRef, ScalarField};

/// The reference point anchoring the general Riccati solution's integral.
const FAMILY_XREF: f64 = 1.0;

fn certify_nodeless(field: &dyn ScalarField, grid: &Grid, what: &'static str) -> CliResult<()> {
    let brackets = singularity_scan(field, grid)?;
    if let Some(&(a, _)) = brackets.first() {
        return Err(CliError::Numeric(darboux_dirac::Error::Pole { what, x: a }));
    }
    Ok(())
}

fn family_over(qhat: FieldRef, c: f64) -> RiccatiFamily {
    RiccatiFamily {
        qhat,
        c,
        xref: FAMILY_XREF,
        mode: FamilyMode::General,
    }
}

fn certify_family(fam: &RiccatiFamily, grid: &Grid) -> CliResult<()> {
    if let Some(&(a, _)) = family_denominator_scan(fam, grid)?.first() {
        return Err(CliError::Numeric(darboux_dirac::Error::Pole {
            what: "Riccati family denominator",
            x: a,
        }));
    }
    Ok(())
}

/// q₀ (the particular solution, or the general family member when a
/// constant is configured), with its seed — and for the general mode its
/// denominator — certified nodeless on the scan grid. Poles surface as
/// errors rather than wild curves.
pub fn base_q(cfg: &RunConfig, scan_grid: Option<&Grid>) -> CliResult<FieldRef> {
    let seed = zero_energy_seed(cfg.omega, cfg.l)?;
    if let Some(grid) = scan_grid {
        certify_nodeless(seed.as_ref(), grid, "Riccati seed")?;
    }
    Ok(match cfg.c_const {
        None => q_particular(seed),
        Some(c) => {
            let fam = family_over(seed, c);
            if let Some(grid) = scan_grid {
                certify_family(&fam, grid)?;
            }
            q_general(&fam)?
        }
    })
}

/// The transformation configuration when an order is requested.
pub fn darboux_config(cfg: &RunConfig) -> CliResult<Option<DarbouxConfig>> {
    if cfg.order == 0 {
        if !cfg.aux.is_empty() {
            return Err(CliError::Usage(
                "auxiliary indices given but --order is 0".into(),
            ));
        }
        return Ok(None);
    }
    if cfg.aux.len() != cfg.order {
        return Err(CliError::Usage(format!(
            "--order {} needs exactly {} auxiliary indices, got {}",
            cfg.order,
            cfg.order,
            cfg.aux.len()
        )));
    }
    Ok(Some(DarbouxConfig::new(cfg.params(0.0)?, cfg.aux.clone())?))
}

/// q₁ with the auxiliary Wronskian and the transformed seed certified
/// nodeless on the scan grid.
fn transformed_q(
    cfg: &RunConfig,
    dcfg: &DarbouxConfig,
    scan_grid: Option<&Grid>,
) -> CliResult<FieldRef> {
    if let Some(grid) = scan_grid {
        certify_nodeless(
            denominator_wronskian(dcfg).as_ref(),
            grid,
            "Wronskian denominator",
        )?;
        certify_nodeless(transformed_seed(dcfg)?.as_ref(), grid, "transformed seed")?;
    }
    Ok(match cfg.c_const {
        None => transformed_q1(dcfg, FamilyMode::Particular)?,
        Some(c) => {
            let fam = family_over(transformed_seed(dcfg)?, c);
            if let Some(grid) = scan_grid {
                certify_family(&fam, grid)?;
            }
            q_general(&fam)?
        }
    })
}

/// Columns x, q0 and (for order >= 1) q1.
pub fn potential_table(cfg: &RunConfig) -> CliResult<Table> {
    let grid = cfg.grid.build()?;
    let q0 = base_q(cfg, Some(&grid))?;
    let q1 = match darboux_config(cfg)? {
        Some(dcfg) => Some(transformed_q(cfg, &dcfg, Some(&grid))?),
        None => None,
    };
    let mut headers = vec!["x".to_string(), "q0".to_string()];
    if q1.is_some() {
        headers.push("q1".to_string());
    }
    let mut table = Table::new(headers);
    for &x in grid.points() {
        let mut row = vec![x, q0.eval(x).map_err(|e| e.at(x))?];
        if let Some(q1) = &q1 {
            row.push(q1.eval(x).map_err(|e| e.at(x))?);
        }
        table.push_row(row);
    }
    Ok(table)
}

/// The Dirac energy of state n under the configured kind and sign.
pub fn state_energy(cfg: &RunConfig, n: f64) -> CliResult<f64> {
    let p = cfg.params(n)?;
    Ok(match cfg.kind {
        PotentialKind::Pseudoscalar => dirac_energy(&p, cfg.esign)?,
        PotentialKind::Scalar => scalar_dirac_energy(&p, cfg.esign)?,
    })
}

/// The (possibly transformed) spinor of bound state n. No certification
/// scans run here; table commands certify once up front.
pub fn build_spinor(cfg: &RunConfig, dcfg: Option<&DarbouxConfig>, n: u32) -> CliResult<Spinor> {
    let p = cfg.params(n as f64)?;
    let e = state_energy(cfg, n as f64)?;
    let (psi1, q) = match dcfg {
        None => (eigenfunction(&p), base_q(cfg, None)?),
        Some(dcfg) => (
            darboux_transform(eigenfunction(&p), dcfg)?,
            transformed_q(cfg, dcfg, None)?,
        ),
    };
    Ok(spinor_from_schrodinger(psi1, q, cfg.mass, e, cfg.kind)?)
}

/// Normalization interval of the densities: from (near) the origin up to
/// the Gaussian cutoff. The general Riccati mode cannot be evaluated
/// arbitrarily close to the origin (its accumulated integral diverges
/// there), so it starts at the grid edge instead.
fn normalization_range(cfg: &RunConfig, grid: &Grid) -> (f64, f64) {
    let lo = if cfg.c_const.is_some() {
        grid.xmin()
    } else {
        1e-6
    };
    (lo, norm_cutoff(cfg.omega).max(grid.xmax()))
}

/// One unit-normalized |Ψ₁|² + |Ψ₂|² column per requested state.
pub fn density_table(cfg: &RunConfig) -> CliResult<Table> {
    let grid = cfg.grid.build()?;
    let states = cfg.bound_indices()?;
    if states.is_empty() {
        return Err(CliError::Usage("density needs at least one state".into()));
    }
    let dcfg = darboux_config(cfg)?;
    let (norm_lo, norm_hi) = normalization_range(cfg, &grid);
    // one certification pass over the full evaluation span
    let cert_grid = Grid::linear(grid.xmin(), norm_hi, 2000)?;
    match &dcfg {
        None => {
            base_q(cfg, Some(&cert_grid))?;
        }
        Some(dcfg) => {
            transformed_q(cfg, dcfg, Some(&cert_grid))?;
        }
    }
    let mut headers = vec!["x".to_string()];
    let mut densities = Vec::new();
    for &n in &states {
        headers.push(format!("density_n{n}"));
        let spinor = build_spinor(cfg, dcfg.as_ref(), n)?;
        let normalized = spinor.normalized(norm_lo, norm_hi)?;
        densities.push(normalized.density());
    }
    let mut table = Table::new(headers);
    for &x in grid.points() {
        let mut row = vec![x];
        for density in &densities {
            row.push(density.eval(x).map_err(|e| e.at(x))?);
        }
        table.push_row(row);
    }
    Ok(table)
}

/// The raw transformed solutions φₙ, one column per state.
pub fn darboux_table(cfg: &RunConfig) -> CliResult<Table> {
    let grid = cfg.grid.build()?;
    let dcfg = darboux_config(cfg)?.ok_or_else(|| {
        CliError::Usage("the darboux command needs --order >= 1 and --aux".into())
    })?;
    certify_nodeless(
        denominator_wronskian(&dcfg).as_ref(),
        &grid,
        "Wronskian denominator",
    )?;
    let mut headers = vec!["x".to_string()];
    let mut fields = Vec::new();
    for &n in &cfg.n_list {
        headers.push(format!("phi_n{n}"));
        fields.push(darboux_transform(eigenfunction(&cfg.params(n)?), &dcfg)?);
    }
    let mut table = Table::new(headers);
    for &x in grid.points() {
        let mut row = vec![x];
        for field in &fields {
            row.push(field.eval(x).map_err(|e| e.at(x))?);
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Rows (n, εₙ, |Eₙ|); real indices are allowed so auxiliary energies can
/// be tabulated alongside the bound states.
pub fn spectrum_table(cfg: &RunConfig) -> CliResult<Table> {
    let mut table = Table::new(vec![
        "n".to_string(),
        "epsilon".to_string(),
        "abs_e".to_string(),
    ]);
    for &n in &cfg.n_list {
        let p = cfg.params(n)?;
        let eps = energy(&p);
        let abs_e = dirac_energy(&p, darboux_dirac::dirac::EnergySign::Positive)?;
        table.push_row(vec![n, eps, abs_e]);
    }
    Ok(table)
}

/// Caption settings of the seven reference figures.
pub fn figure_table(index: u8) -> CliResult<Table> {
    let base = RunConfig::default();
    match index {
        1 => potential_table(&base),
        2 => density_table(&RunConfig {
            n_list: vec![0.0, 1.0, 2.0],
            ..base
        }),
        3 => potential_table(&RunConfig {
            order: 1,
            aux: vec![-0.5],
            ..base
        }),
        4 => density_table(&RunConfig {
            n_list: vec![0.0, 1.0, 2.0],
            order: 1,
            aux: vec![-0.5],
            ..base
        }),
        5 => q1_family_table(&base, &[-0.5, -0.02, -1e-4]),
        6 => potential_table(&RunConfig {
            order: 2,
            aux: vec![1.5, 1.25],
            ..base
        }),
        7 => density_family_table(
            &RunConfig {
                n_list: vec![1.0],
                ..base
            },
            &[-0.5, -0.02, -1e-4],
        ),
        other => Err(CliError::Usage(format!(
            "figure index must be 1..=7, got {other}"
        ))),
    }
}

/// x plus one q1 column per auxiliary index (the deformation family).
pub fn q1_family_table(cfg: &RunConfig, aux_values: &[f64]) -> CliResult<Table> {
    let grid = cfg.grid.build()?;
    let mut headers = vec!["x".to_string()];
    let mut fields = Vec::new();
    for &n1 in aux_values {
        headers.push(format!("q1_n1_{n1}"));
        let dcfg = DarbouxConfig::new(cfg.params(0.0)?, vec![n1])?;
        certify_nodeless(transformed_seed(&dcfg)?.as_ref(), &grid, "transformed seed")?;
        fields.push(transformed_q1(&dcfg, FamilyMode::Particular)?);
    }
    let mut table = Table::new(headers);
    for &x in grid.points() {
        let mut row = vec![x];
        for field in &fields {
            row.push(field.eval(x).map_err(|e| e.at(x))?);
        }
        table.push_row(row);
    }
    Ok(table)
}

/// One transformed-density column per auxiliary index, all for the same
/// bound state (the first entry of the n list).
pub fn density_family_table(cfg: &RunConfig, aux_values: &[f64]) -> CliResult<Table> {
    let grid = cfg.grid.build()?;
    let state = *cfg
        .bound_indices()?
        .first()
        .ok_or_else(|| CliError::Usage("density needs at least one state".into()))?;
    let (norm_lo, norm_hi) = normalization_range(cfg, &grid);
    let mut headers = vec!["x".to_string()];
    let mut densities = Vec::new();
    for &n1 in aux_values {
        headers.push(format!("density_n{state}_aux_{n1}"));
        let sub = RunConfig {
            order: 1,
            aux: vec![n1],
            ..cfg.clone()
        };
        let dcfg = darboux_config(&sub)?.expect("order is 1");
        let spinor = build_spinor(&sub, Some(&dcfg), state)?;
        let normalized = spinor.normalized(norm_lo, norm_hi)?;
        densities.push(normalized.density());
    }
    let mut table = Table::new(headers);
    for &x in grid.points() {
        let mut row = vec![x];
        for density in &densities {
            row.push(density.eval(x).map_err(|e| e.at(x))?);
        }
        table.push_row(row);
    }
    Ok(table)
}

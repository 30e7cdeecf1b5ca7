//! Run configuration shared by every subcommand.

use crate::{CliError, CliResult};
use darboux_dirac::dirac::{EnergySign, PotentialKind};
use darboux_dirac::oscillator::{Grid, ModelParams};

/// Evaluation grid specification `xmin:xmax:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<GridSpec, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid must be xmin:xmax:count, got '{s}'"));
        }
        let xmin: f64 = parts[0]
            .parse()
            .map_err(|_| format!("invalid grid xmin '{}'", parts[0]))?;
        let xmax: f64 = parts[1]
            .parse()
            .map_err(|_| format!("invalid grid xmax '{}'", parts[1]))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| format!("invalid grid count '{}'", parts[2]))?;
        if !xmin.is_finite() || !xmax.is_finite() || xmin <= 0.0 || xmax <= xmin || count < 2 {
            return Err(format!(
                "grid requires 0 < xmin < xmax and count >= 2, got '{s}'"
            ));
        }
        Ok(GridSpec { xmin, xmax, count })
    }

    pub fn build(&self) -> CliResult<Grid> {
        Ok(Grid::linear(self.xmin, self.xmax, self.count)?)
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub omega: f64,
    pub l: u32,
    pub mass: f64,
    pub n_list: Vec<f64>,
    pub order: usize,
    pub aux: Vec<f64>,
    pub c_const: Option<f64>,
    pub grid: GridSpec,
    pub kind: PotentialKind,
    pub esign: EnergySign,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            omega: 1.0,
            l: 1,
            mass: 1.0,
            n_list: vec![0.0],
            order: 0,
            aux: Vec::new(),
            c_const: None,
            grid: GridSpec {
                xmin: 0.1,
                xmax: 8.0,
                count: 400,
            },
            kind: PotentialKind::Pseudoscalar,
            esign: EnergySign::Positive,
        }
    }
}

impl RunConfig {
    pub fn params(&self, n: f64) -> CliResult<ModelParams> {
        Ok(ModelParams::new(self.omega, self.l, self.mass, n)?)
    }

    /// State indices restricted to nonnegative integers (densities and
    /// spinors are defined for bound states only).
    pub fn bound_indices(&self) -> CliResult<Vec<u32>> {
        self.n_list
            .iter()
            .map(|&n| {
                if n >= 0.0 && n.fract() == 0.0 && n <= u32::MAX as f64 {
                    Ok(n as u32)
                } else {
                    Err(CliError::Usage(format!(
                        "state index must be a nonnegative integer, got {n}"
                    )))
                }
            })
            .collect()
    }
}

pub fn parse_esign(s: &str) -> Result<EnergySign, String> {
    match s {
        "+" => Ok(EnergySign::Positive),
        "-" => Ok(EnergySign::Negative),
        other => Err(format!("energy sign must be + or -, got '{other}'")),
    }
}

pub fn parse_kind(s: &str) -> Result<PotentialKind, String> {
    match s {
        "pseudoscalar" => Ok(PotentialKind::Pseudoscalar),
        "scalar" => Ok(PotentialKind::Scalar),
        other => Err(format!(
            "kind must be pseudoscalar or scalar, got '{other}'"
        )),
    }
}

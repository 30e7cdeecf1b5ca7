//! Command line entry point.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/configuration
//! error, 3 numerical pole or divergence.

use clap::{Args, Parser, Subcommand};
use darboux_dirac_cli::commands;
use darboux_dirac_cli::config::{parse_esign, parse_kind, GridSpec, RunConfig};
use darboux_dirac_cli::table::Table;
use darboux_dirac_cli::verify;
use darboux_dirac_cli::{CliError, CliResult};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "darboux-dirac",
    version,
    about = "Pseudoscalar/scalar Dirac potentials from the rationally extended radial \
             oscillator, their Darboux partners, and the verification suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Oscillator frequency (> 0)
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Angular momentum quantum number
    #[arg(long, default_value_t = 1)]
    l: u32,
    /// Dirac mass (>= 0)
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// State indices, comma separated (reals allowed where meaningful)
    #[arg(long, value_delimiter = ',', default_value = "0")]
    n: Vec<f64>,
    /// Darboux transformation order N
    #[arg(long, default_value_t = 0)]
    order: usize,
    /// Auxiliary state indices n1,...,nN, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    aux: Vec<f64>,
    /// Family constant: use the general Riccati solution instead of the
    /// particular one
    #[arg(long, allow_hyphen_values = true)]
    c_const: Option<f64>,
    /// Evaluation grid xmin:xmax:count
    #[arg(long, default_value = "0.1:8:400", value_parser = GridSpec::parse)]
    grid: GridSpec,
    /// Potential kind: pseudoscalar | scalar
    #[arg(long, default_value = "pseudoscalar", value_parser = parse_kind)]
    kind: darboux_dirac::dirac::PotentialKind,
    /// Energy sign branch: + | -
    #[arg(long, default_value = "+", value_parser = parse_esign)]
    esign: darboux_dirac::dirac::EnergySign,
    /// Output file (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn run_config(&self) -> RunConfig {
        RunConfig {
            omega: self.omega,
            l: self.l,
            mass: self.m,
            n_list: self.n.clone(),
            order: self.order,
            aux: self.aux.clone(),
            c_const: self.c_const,
            grid: self.grid,
            kind: self.kind,
            esign: self.esign,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit x, q0 (and q1 when --order >= 1) as CSV
    Potential(CommonArgs),
    /// Emit unit-normalized probability densities per bound state as CSV
    Density(CommonArgs),
    /// Emit the raw Darboux-transformed solutions per state as CSV
    Darboux(CommonArgs),
    /// Emit the spectrum table (n, epsilon_n, |E_n|) as CSV
    Spectrum(CommonArgs),
    /// Run the full verification suite and print one line per check
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Use the first-derivative reading of the potential shift in the
        /// consistency check (negative control; makes verification fail)
        #[arg(long, hide = true)]
        crum_literal: bool,
    },
    /// Emit the data behind one of the seven reference figures
    Figure {
        /// Figure index, 1..=7
        index: u8,
        /// Output file (standard output when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_output(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_table(table: Table, out: Option<&PathBuf>) -> CliResult<ExitCode> {
    write_output(&table.render(), out)?;
    Ok(ExitCode::SUCCESS)
}

fn dispatch(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Potential(args) => emit_table(
            commands::potential_table(&args.run_config())?,
            args.out.as_ref(),
        ),
        Command::Density(args) => emit_table(
            commands::density_table(&args.run_config())?,
            args.out.as_ref(),
        ),
        Command::Darboux(args) => emit_table(
            commands::darboux_table(&args.run_config())?,
            args.out.as_ref(),
        ),
        Command::Spectrum(args) => emit_table(
            commands::spectrum_table(&args.run_config())?,
            args.out.as_ref(),
        ),
        Command::Verify {
            common,
            crum_literal,
        } => {
            let tolerance = verify::default_tolerance();
            let report = verify::run_verify(&common.run_config(), crum_literal, tolerance)?;
            write_output(&report.render(), common.out.as_ref())?;
            Ok(if report.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Figure { index, out } => emit_table(commands::figure_table(index)?, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

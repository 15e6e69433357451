//! Command-line front end: loads a TOML run configuration, runs one of the
//! subcommands or a parameter sweep, and writes CSV tables and optional
//! plotting scripts.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 when a grid run fails
//! its convergence check, 1 for i/o problems.

pub mod commands;
pub mod config;
mod error;
pub mod model;
pub mod plot;
pub mod sweep;
pub mod table;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{execute, Command, Output};
pub use config::{apply_override, parse_config, parse_table, RunConfig};
pub use error::{CliError, Issue};
pub use sweep::{sweep, SweepAxis, SweepResult};
pub use table::{format_float, Cell, Table};

use config::{PulseChoice, Scheme};

#[derive(Debug, Parser)]
#[command(name = "e1m1", version, about = "Finite pulse-time E1-M1 clock interferometry")]
pub struct Cli {
    /// TOML run configuration; preset values are used when absent.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory, overriding `output.directory`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "E1M1_WORKERS")]
    pub workers: Option<usize>,
    /// Configuration override `section.key=value`; may be repeated.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Also write a matplotlib script next to every CSV.
    #[arg(long, global = true)]
    pub plot: bool,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Pi,
    Pi2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Rabi,
    Pulse,
    Beam,
    Ifo,
    Oracle,
}

#[derive(Debug, Clone, Args)]
pub struct PhysicsFlags {
    /// Relative detuning `gamma` in rad/s for `rabi`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    /// Double-differential phase of scheme a from two runs.
    #[arg(long)]
    pub double_diff: bool,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Plane-wave Rabi populations.
    Rabi(PhysicsFlags),
    /// Generalized pulse matrix over a momentum scan.
    Pulse(PhysicsFlags),
    /// Beam factors and their expansions along the axis.
    Beam,
    /// Interferometer phases and visibilities.
    Ifo(PhysicsFlags),
    /// Grid propagation of one pulse against the analytic operator.
    Oracle(PhysicsFlags),
    /// Cartesian sweep of up to three configuration keys.
    Sweep {
        #[arg(long, value_enum)]
        target: TargetArg,
        /// `section.key=v1,v2,...` or `section.key=start:stop:count`.
        #[arg(long = "axis", required = true)]
        axes: Vec<String>,
        #[command(flatten)]
        flags: PhysicsFlags,
    },
    /// Print the preset catalog.
    Presets,
}

fn to_command(target: TargetArg, f: &PhysicsFlags) -> Command {
    let kind = f.kind.map(|k| match k {
        KindArg::Pi => PulseChoice::Pi,
        KindArg::Pi2 => PulseChoice::PiHalf,
    });
    match target {
        TargetArg::Rabi => Command::Rabi { gamma_rad_s: f.gamma },
        TargetArg::Pulse => Command::Pulse { kind },
        TargetArg::Beam => Command::Beam,
        TargetArg::Ifo => Command::Ifo {
            scheme: f.scheme.map(|s| match s {
                SchemeArg::A => Scheme::A,
                SchemeArg::B => Scheme::B,
            }),
            double_diff: f.double_diff,
        },
        TargetArg::Oracle => Command::Oracle { kind },
    }
}

fn load_raw(cli: &Cli) -> Result<toml::Table, CliError> {
    let mut raw = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            parse_table(&text)?
        }
        None => toml::Table::new(),
    };
    for o in &cli.overrides {
        apply_override(&mut raw, o)?;
    }
    Ok(raw)
}

fn emit(tables: &[Table], dir: &Path, plot: bool) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();
    for t in tables {
        written.push(t.write_to(dir)?);
        if plot && !t.rows.is_empty() {
            written.push(plot::write_script(t, dir)?);
        }
    }
    Ok(written)
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Runs a parsed command line and returns the files it wrote.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    if let CliCommand::Presets = cli.command {
        print!("{}", e1m1_core::presets::render());
        return Ok(Vec::new());
    }
    let raw = load_raw(cli)?;
    let cfg = RunConfig::from_table(&raw)?;
    let dir = cli.out.clone().unwrap_or_else(|| cfg.output.directory.clone());
    let plot = cli.plot || cfg.output.plot_script;
    let (target, flags) = match &cli.command {
        CliCommand::Rabi(f) => (TargetArg::Rabi, Some(f)),
        CliCommand::Pulse(f) => (TargetArg::Pulse, Some(f)),
        CliCommand::Beam => (TargetArg::Beam, None),
        CliCommand::Ifo(f) => (TargetArg::Ifo, Some(f)),
        CliCommand::Oracle(f) => (TargetArg::Oracle, Some(f)),
        CliCommand::Sweep { target, axes, flags } => {
            let axes = axes.iter().map(|a| SweepAxis::parse(a)).collect::<Result<Vec<_>, _>>()?;
            if cli.workers == Some(0) {
                return Err(CliError::invalid("--workers", "must be at least 1"));
            }
            let workers = cli.workers.unwrap_or_else(default_workers);
            let result = sweep(&raw, to_command(*target, flags), &axes, workers)?;
            let mut tables = vec![result.table];
            if !result.failures.rows.is_empty() {
                tables.push(result.failures);
            }
            let written = emit(&tables, &dir, plot)?;
            return match result.worst {
                Some(e) => Err(e),
                None => Ok(written),
            };
        }
        CliCommand::Presets => unreachable!("handled above"),
    };
    let default_flags = PhysicsFlags { gamma: None, kind: None, scheme: None, double_diff: false };
    let out = execute(to_command(target, flags.unwrap_or(&default_flags)), &cfg)?;
    emit(&out.tables, &dir, plot)
}

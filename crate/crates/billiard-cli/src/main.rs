//! `billiard`: experiments with billiard-map rotation numbers and rotation
//! vectors on piecewise-smooth planar tables.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use config::{OutputFormat, Overrides};

#[derive(Parser)]
#[command(
    name = "billiard",
    version,
    about = "Billiard map orbits, Liouville sampling, and Birkhoff rotation statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace a single orbit from an explicit initial phase point
    Orbit(RunArgs),
    /// Rotation number estimates over Liouville samples (q = 1 tables)
    Rotnum(RunArgs),
    /// Per-component rotation vector estimates
    Rotvec(RunArgs),
    /// Compare the phase-space mean rotation number/vector with theory
    MeanCheck(RunArgs),
    /// Test the distributional symmetry of rho about 1/2
    SymmetryCheck(RunArgs),
    /// Verify the involution identities on random phase points
    InvolutionCheck(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment configuration document (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Orbit length N (overrides the config)
    #[arg(long)]
    steps: Option<usize>,
    /// Monte Carlo sample count M (overrides the config)
    #[arg(long)]
    samples: Option<usize>,
    /// Master RNG seed (overrides the config)
    #[arg(long)]
    seed: Option<u64>,
    /// Histogram bin count (overrides the config)
    #[arg(long)]
    bins: Option<usize>,
    /// Initial phase point: boundary component index
    #[arg(long, requires = "s0", requires = "theta0")]
    component: Option<usize>,
    /// Initial phase point: arclength coordinate
    #[arg(long)]
    s0: Option<f64>,
    /// Initial phase point: outgoing angle in (0, pi)
    #[arg(long)]
    theta0: Option<f64>,
    /// Output format: csv or json
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format '{other}' (expected csv or json)")),
    }
}

fn run(args: &RunArgs, cmd: fn(&config::Experiment) -> Result<()>) -> Result<()> {
    let over = Overrides {
        steps: args.steps,
        samples: args.samples,
        seed: args.seed,
        bins: args.bins,
        component: args.component,
        s0: args.s0,
        theta0: args.theta0,
        format: args.format,
        out: args.out.clone(),
    };
    let exp = config::load(&args.config, over)?;
    cmd(&exp)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Orbit(a) => run(a, commands::orbit),
        Command::Rotnum(a) => run(a, commands::rotnum),
        Command::Rotvec(a) => run(a, commands::rotvec),
        Command::MeanCheck(a) => run(a, commands::mean_check),
        Command::SymmetryCheck(a) => run(a, commands::symmetry_check),
        Command::InvolutionCheck(a) => run(a, commands::involution_check),
    }
}

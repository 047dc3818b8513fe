//! `dcc`: simulate and analyze adaptive duty-cycle congestion control.
//!
//! Subcommands:
//!
//! - `run`: simulate one scenario (a JSON file or a built-in name) and write
//!   the time series as CSV or JSON.
//! - `table3`: report cold-start convergence times for both control
//!   variants against the bundled reference values.
//! - `table4`: report merge fairness and convergence metrics against the
//!   bundled reference values.
//! - `fig1`: emit the predicted steady-state CBR curve for the two decay
//!   gains as plot-ready CSV.
//! - `analyze`: print the closed-form convergence analysis for one station
//!   count.
//!
//! Exit codes: 0 on success, 1 on file I/O failures, 2 on usage or
//! configuration errors.

mod config;
mod output;
mod reports;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcc_core::control::Variant;
use dcc_core::engine::{run, NoiseConfig};
use dcc_core::scenario::{resolve, Algorithm};

/// Errors that end the process, with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// The request cannot be executed as stated: bad flags, bad scenario,
    /// bad parameters. Exit code 2.
    Config(String),
    /// A file read or write failed. Exit code 1.
    Io {
        /// The file involved.
        path: PathBuf,
        /// The underlying error.
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

#[derive(Parser)]
#[command(name = "dcc", version, about = "Simulate and analyze adaptive DCC duty-cycle control")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one scenario and write its time series
    Run(RunArgs),
    /// Report cold-start convergence times against the reference values
    Table3,
    /// Report merge fairness and convergence against the reference values
    Table4,
    /// Emit the predicted steady-state CBR curve for two decay gains
    Fig1(Fig1Args),
    /// Print the closed-form convergence analysis for a station count
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario JSON file, or a built-in name: cold<K>, merge25x<K>
    #[arg(long)]
    scenario: String,
    /// Control law override (defaults to the scenario's algorithm)
    #[arg(long, value_enum)]
    algo: Option<AlgoArg>,
    /// Run length in seconds (defaults to the scenario's duration)
    #[arg(long)]
    duration: Option<f64>,
    /// Output file (defaults to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Measurement-noise amplitude; enables seeded noise injection
    #[arg(long)]
    noise: Option<f64>,
    /// Noise generator seed (requires --noise; defaults to 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Parameter override, repeatable
    #[arg(long = "set", value_name = "PARAM=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct Fig1Args {
    /// Output file (defaults to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Station count (may be fractional, at least 1)
    k: f64,
    /// Parameter override, repeatable
    #[arg(long = "set", value_name = "PARAM=VALUE")]
    set: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    /// Single-gain law
    Etsi,
    /// Dual-gain law
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Table3 => reports::table3(),
        Command::Table4 => reports::table4(),
        Command::Fig1(args) => reports::fig1(args.out.as_deref()),
        Command::Analyze(args) => reports::analyze(args.k, &args.set),
    }
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let sets = config::parse_set_args(&args.set)?;
    let loaded = config::load_scenario(&args.scenario, &sets)?;

    let resolution = resolve(&loaded.spec, &loaded.params)
        .map_err(|e| CliError::Config(format!("invalid scenario: {e}")))?;
    for warning in &resolution.warnings {
        eprintln!("warning: {warning}");
    }

    let algorithm = match args.algo {
        Some(AlgoArg::Etsi) => Algorithm::Etsi,
        Some(AlgoArg::Dual) => Algorithm::Dual,
        None => loaded.spec.algorithm,
    };
    let variant = match algorithm {
        Algorithm::Etsi => Variant::Etsi,
        Algorithm::Dual => Variant::DualAlpha(loaded.dual),
    };
    let duration = args.duration.unwrap_or(loaded.spec.duration);
    let noise = match (args.noise, args.seed) {
        (Some(amplitude), seed) => Some(NoiseConfig {
            amplitude,
            seed: seed.unwrap_or(0),
        }),
        (None, Some(_)) => {
            return Err(CliError::Config("--seed requires --noise".into()));
        }
        (None, None) => None,
    };

    let series = run(&resolution.spec, &loaded.params, variant, duration, noise)
        .map_err(|e| CliError::Config(e.to_string()))?;

    let body = match args.format {
        FormatArg::Csv => output::render_csv(&series),
        FormatArg::Json => output::render_json(&series)?,
    };
    output::write_out(args.out.as_deref(), &body)
}

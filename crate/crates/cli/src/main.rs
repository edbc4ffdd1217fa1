//! `clonelab`: reproduce figures, run verification suites and query the
//! cloning machines from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "clonelab", version, about = "Optimal 1→2 qubit cloning: simulation and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Grid points (figures, capacity).
    #[arg(long, global = true, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
    pub grid: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo shots (teleport, verify).
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    /// Output format; commands pick a sensible default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Tolerance override for a named check, NAME=VALUE (split at the last =); repeatable.
    #[arg(long = "tol", global = true, value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct StateSpec {
    /// Bloch vector x,y,z of a pure state.
    #[arg(long, allow_hyphen_values = true)]
    pub state: Option<String>,
    /// Bloch angles theta,phi in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub angles: Option<String>,
    /// Amplitudes re0,im0,re1,im1 (normalized on input).
    #[arg(long, allow_hyphen_values = true)]
    pub amplitudes: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clone a single pure state and report both clones.
    Universal {
        #[command(flatten)]
        state: StateSpec,
        /// Registered cloner name.
        #[arg(long, default_value = "universal")]
        cloner: String,
    },
    /// Emit the data behind a figure (fig1 or fig2).
    Figures { which: String },
    /// Run a verification suite; exits 1 if any check fails.
    Verify { suite: String },
    /// Capacity bound for a list or grid of η values.
    Capacity {
        /// Comma-separated η values; without it a grid over [0, 1] is used.
        #[arg(long)]
        eta: Option<String>,
        /// Also report the bound that assumes continuity in η.
        #[arg(long)]
        continuity: bool,
    },
    /// Sample teleportation cloning of one state.
    Teleport {
        #[command(flatten)]
        state: StateSpec,
    },
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.rsplit_once('=').ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let v: f64 = value.trim().parse().map_err(|_| format!("tolerance '{value}' is not a number"))?;
    if v.is_nan() || v < 0.0 {
        return Err(format!("tolerance must be non-negative, got {v}"));
    }
    Ok((name.trim().to_string(), v))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Universal { state, cloner } => commands::universal(&cli.common, state, cloner),
        Command::Figures { which } => commands::figures(&cli.common, which),
        Command::Verify { suite } => commands::verify(&cli.common, suite),
        Command::Capacity { eta, continuity } => commands::capacity(&cli.common, eta.as_deref(), *continuity),
        Command::Teleport { state } => commands::teleport(&cli.common, state),
    };
    match result.and_then(|out| output::emit(&cli.common, &out).map(|_| out)) {
        Ok(Outcome { checks_failed: false, .. }) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

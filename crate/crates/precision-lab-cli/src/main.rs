//! Command-line front end: configures experiments, runs them, and writes
//! CSV and summary reports.
//!
//! Exit codes: 0 success, 2 diverged run, 64 usage error, 74 I/O error.

mod commands;
mod config;
mod output;

use clap::error::ErrorKind;
use clap::Parser;
use std::path::PathBuf;

pub const EX_OK: i32 = 0;
pub const EX_DIVERGED: i32 = 2;
pub const EX_USAGE: i32 = 64;
pub const EX_IOERR: i32 = 74;

#[derive(Parser, Debug)]
#[command(
    name = "precision-lab",
    version,
    about = "Rounding-injection experiments for floating-point error accumulation",
    after_help = "Exit codes: 0 ok, 2 diverged run, 64 usage error, 74 I/O error."
)]
pub struct Cli {
    /// Optional key-value config file; command-line flags win over it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(clap::Subcommand, Debug)]
pub enum Command {
    /// Iterate 2D rotations and write the drift trajectory as CSV.
    Rotate(RotateArgs),
    /// Integrate twin Lorenz runs and write the separation series as CSV.
    Lorenz(LorenzArgs),
    /// Drift table across precision levels for one rotation experiment.
    Table(TableArgs),
}

#[derive(clap::Args, Debug)]
pub struct RotateArgs {
    /// Rotation angle in degrees per step [default: 5]
    #[arg(long, value_name = "DEG")]
    pub theta_deg: Option<f64>,

    /// Number of steps [default: 288]
    #[arg(long)]
    pub steps: Option<u64>,

    /// Precision: digit count, "native", "extended", or "places:P" [default: native]
    #[arg(long)]
    pub digits: Option<String>,

    /// Recurrence: "step" (v <- R v) or "square" (R <- R^2) [default: step]
    #[arg(long)]
    pub mode: Option<String>,

    /// Record every Nth step (the final step always records) [default: 1]
    #[arg(long, value_name = "N")]
    pub record_every: Option<u64>,

    /// Output CSV path, "-" for stdout [default: -]
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,

    /// Tie rule: "half-away" or "half-even" [default: half-away]
    #[arg(long)]
    pub tie: Option<String>,

    /// Also write a companion gnuplot script to this path (requires --out FILE)
    #[arg(long, value_name = "PATH")]
    pub gnuplot_script: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct LorenzArgs {
    /// Precision of twin A (digits, "native", "extended", "places:P") [default: native]
    #[arg(long)]
    pub digits_a: Option<String>,

    /// Precision of twin B [default: 7]
    #[arg(long)]
    pub digits_b: Option<String>,

    /// Integration step size [default: 0.01]
    #[arg(long)]
    pub h: Option<f64>,

    /// Integration horizon [default: 50]
    #[arg(long)]
    pub t_max: Option<f64>,

    /// Separation threshold defining the divergence time [default: 1]
    #[arg(long)]
    pub threshold: Option<f64>,

    /// Lorenz sigma [default: 10]
    #[arg(long)]
    pub sigma: Option<f64>,

    /// Lorenz rho [default: 28]
    #[arg(long)]
    pub rho: Option<f64>,

    /// Lorenz beta [default: 8/3]
    #[arg(long)]
    pub beta: Option<f64>,

    /// Initial x [default: 1]
    #[arg(long)]
    pub x0: Option<f64>,

    /// Initial y [default: 1]
    #[arg(long)]
    pub y0: Option<f64>,

    /// Initial z [default: 1]
    #[arg(long)]
    pub z0: Option<f64>,

    /// Truncate twin B once, mid-run, to this many significant digits
    #[arg(long, value_name = "DIGITS")]
    pub restart_truncate: Option<u32>,

    /// Record every Nth step [default: 1]
    #[arg(long, value_name = "N")]
    pub sample_every: Option<u64>,

    /// Output CSV path, "-" for stdout [default: -]
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,

    /// Tie rule: "half-away" or "half-even" [default: half-away]
    #[arg(long)]
    pub tie: Option<String>,

    /// Also write a companion gnuplot script to this path (requires --out FILE)
    #[arg(long, value_name = "PATH")]
    pub gnuplot_script: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct TableArgs {
    /// Comma-separated precision list [default: native,12,7]
    #[arg(long)]
    pub digits_list: Option<String>,

    /// Rotation angle in degrees per step [default: 5]
    #[arg(long, value_name = "DEG")]
    pub theta_deg: Option<f64>,

    /// Number of steps [default: 288]
    #[arg(long)]
    pub steps: Option<u64>,

    /// Output format: "text" or "csv" [default: text]
    #[arg(long)]
    pub format: Option<String>,

    /// Tie rule: "half-away" or "half-even" [default: half-away]
    #[arg(long)]
    pub tie: Option<String>,

    /// Output path, "-" for stdout [default: -]
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
}

/// A CLI failure carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EX_USAGE,
            message: message.into(),
        }
    }

    pub fn io(message: impl std::fmt::Display) -> Self {
        Failure {
            code: EX_IOERR,
            message: message.to_string(),
        }
    }
}

impl From<precision_lab::Error> for Failure {
    fn from(e: precision_lab::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EX_OK;
            }
            eprint!("{e}");
            return EX_USAGE;
        }
    };

    let file = match config::load(cli.config.as_deref()) {
        Ok(f) => f,
        Err(f) => {
            eprintln!("precision-lab: {}", f.message);
            return f.code;
        }
    };

    let result = match &cli.cmd {
        Command::Rotate(args) => commands::rotate(args, &file),
        Command::Lorenz(args) => commands::lorenz(args, &file),
        Command::Table(args) => commands::table(args, &file),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("precision-lab: {}", f.message);
            f.code
        }
    }
}

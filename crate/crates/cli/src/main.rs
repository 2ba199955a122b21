//! `sasaki`: geodesics, lifts and distribution checks on the Heisenberg
//! manifold and its tangent bundle.
//!
//! Exit codes: 0 when every reported check passes, 1 when any fails, 2 on
//! usage, I/O or numerical errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sasaki", version, about = "Geodesics, lifts and distribution checks on (H3, g) and (TH3, g^s)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form and RK4 geodesic of H3 from the origin with velocity (u, v, w)
    BaseGeodesic {
        #[command(flatten)]
        init: InitArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// RK4 geodesic of TH3 from the bundle origin with velocity (u, v, w, l, m, n)
    BundleGeodesic {
        #[command(flatten)]
        init: InitArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Horizontal or natural lift of the base geodesic with velocity (u, v, w)
    Lift {
        #[arg(long, value_enum)]
        kind: LiftKind,
        #[command(flatten)]
        init: InitArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Totally geodesic and isocline checks for a built-in distribution
    Check {
        /// One of htm, vtm, ker-omega-h, ker-omega-v, f-h, f-v
        #[arg(long)]
        name: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the full verification suite
    Verify {
        #[arg(long, required = true)]
        all: bool,
        #[arg(long, hide = true)]
        inject_curvature_flip: bool,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct InitArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    u: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    v: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    w: f64,
    /// Initial Dy/dt (initial fiber vector for `lift --kind horizontal`)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    l: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    m: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    n: f64,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[arg(long, default_value_t = 10.0)]
    t_max: f64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    /// Pass threshold; each command has its own default
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for the sample grid of distribution checks
    #[arg(long, default_value_t = sasaki_core::DEFAULT_SEED)]
    seed: u64,
    /// Output format [default: csv for trajectories, json for check and verify]
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write data here; the summary then goes to stdout instead of stderr
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum LiftKind {
    Horizontal,
    Natural,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

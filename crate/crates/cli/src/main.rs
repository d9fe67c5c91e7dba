use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use compass_cli::{fuzz, Artifacts};

#[derive(Parser)]
#[command(name = "compass", version, about = "Compass-only geometric constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a construction script.
    Run {
        script: PathBuf,
        /// Write an SVG figure of the whole trace.
        #[arg(long, value_name = "PATH")]
        svg: Option<String>,
        /// Write the trace as JSON.
        #[arg(long, value_name = "PATH")]
        trace: Option<String>,
        /// Print `NAME x y` for every point bound by `let`.
        #[arg(long)]
        points: bool,
        /// Absolute tolerance (default 1e-9, or COMPASS_TOL).
        #[arg(long, value_name = "EPS")]
        tol: Option<f64>,
    },
    /// Run one of the built-in constructions.
    Demo {
        name: String,
        #[arg(long, value_name = "PATH")]
        svg: Option<String>,
        #[arg(long, value_name = "PATH")]
        trace: Option<String>,
        #[arg(long)]
        points: bool,
        #[arg(long, value_name = "EPS")]
        tol: Option<f64>,
    },
    /// Compare random instances of each construction against closed forms.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        cases: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest accepted distance from the oracle.
        #[arg(long, value_name = "EPS", default_value_t = fuzz::DEFAULT_THRESHOLD)]
        tol: f64,
        /// An operation name, or `all`.
        #[arg(long, default_value = "all")]
        op: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = std::env::var("COMPASS_TOL").ok();
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let tol = |flag: Option<f64>| compass_cli::tolerance(flag, env.as_deref());
    let code = match cli.command {
        Command::Run {
            script,
            svg,
            trace,
            points,
            tol: flag,
        } => match tol(flag) {
            Ok(t) => compass_cli::cmd_run(&script, &Artifacts { svg, trace, points }, &t, &mut out, &mut err),
            Err(msg) => {
                eprintln!("error: {msg}");
                compass_cli::EXIT_SCRIPT
            }
        },
        Command::Demo {
            name,
            svg,
            trace,
            points,
            tol: flag,
        } => match tol(flag) {
            Ok(t) => compass_cli::cmd_demo(&name, &Artifacts { svg, trace, points }, &t, &mut out, &mut err),
            Err(msg) => {
                eprintln!("error: {msg}");
                compass_cli::EXIT_SCRIPT
            }
        },
        Command::Fuzz { cases, seed, tol: threshold, op } => match tol(None) {
            Ok(t) if threshold.is_finite() && threshold > 0.0 => {
                compass_cli::cmd_fuzz(&op, cases, seed, threshold, &t, &mut out, &mut err)
            }
            Ok(_) => {
                eprintln!("error: --tol must be a positive number");
                compass_cli::EXIT_SCRIPT
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                compass_cli::EXIT_SCRIPT
            }
        },
    };
    ExitCode::from(code as u8)
}

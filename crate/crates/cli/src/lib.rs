//! Command-line front end: compute Q for states from files or family specs,
//! sweep the analytic families to CSV, and run the validation suites.
//!
//! Exit codes: 0 ok, 1 validation-suite failure, 2 parse error,
//! 3 state-validation error, 4 usage error.

mod family;
mod statefile;
mod sweep;
mod validate;

pub use family::parse_family_spec;
pub use statefile::{read_state, write_state, StateFile};

use clap::{ArgGroup, Parser, Subcommand};
use skewcorr_core::{
    q_general, q_pure, q_qubit_qudit, quantum_correlation, CorrelationResult, DensityMatrix,
    JadOptions,
};
use std::path::PathBuf;

const PURITY_THRESHOLD: f64 = 1.0 - 1e-12;

/// Error carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 4, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn state(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }

    pub fn suite(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: 2, message: format!("i/o error: {e}") }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "skewcorr",
    about = "Skew-information quantum correlation of bipartite states",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute Q for a single state.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "family"])))]
    Compute {
        /// JSON state file {"m":..,"n":..,"rho":[[[re,im],..],..]}.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Family spec, e.g. "werner:m=3,x=0.5" or "ppt:alpha=3.2".
        #[arg(long)]
        family: Option<String>,
        /// Computation route.
        #[arg(long, default_value = "auto", value_parser = ["auto", "jad", "qubit", "pure"])]
        method: String,
        /// JAD restarts from Haar-random unitaries.
        #[arg(long)]
        restarts: Option<usize>,
        /// Rotation tolerance of the JAD sweep loop.
        #[arg(long)]
        tol: Option<f64>,
        /// Maximum JAD sweeps per run.
        #[arg(long)]
        max_sweeps: Option<usize>,
        /// Seed (default: $SKEWCORR_SEED, then 0).
        #[arg(long)]
        seed: Option<u64>,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Sweep a family parameter and write a CSV of computed vs analytic Q.
    Sweep {
        /// Family: werner, isotropic or ppt.
        #[arg(long)]
        family: String,
        /// Subsystem dimension (werner/isotropic; ignored for ppt).
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_sweeps: Option<usize>,
        /// Worker threads for grid evaluation (rows stay in order).
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run the oracle and property validation suites.
    Validate {
        #[arg(long, default_value = "all", value_parser = ["oracle", "properties", "all"])]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Cases per check.
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Optional state fixture included in the checks.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Emit the standard figure sweeps as CSV.
    Figures {
        #[arg(long, value_parser = ["fig1", "fig2a", "fig2b"])]
        which: String,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

/// Parse arguments from the process environment and run; returns the exit
/// code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn env_seed() -> Result<u64, CliError> {
    match std::env::var("SKEWCORR_SEED") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| CliError::usage(format!("SKEWCORR_SEED is not a valid u64: {v:?}"))),
        Err(_) => Ok(0),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    match flag {
        Some(s) => Ok(s),
        None => env_seed(),
    }
}

fn jad_options(
    seed: u64,
    restarts: Option<usize>,
    tol: Option<f64>,
    max_sweeps: Option<usize>,
) -> Result<JadOptions, CliError> {
    let defaults = JadOptions::default();
    let opts = JadOptions {
        rotation_tolerance: tol.unwrap_or(defaults.rotation_tolerance),
        max_sweeps: max_sweeps.unwrap_or(defaults.max_sweeps),
        restarts: restarts.unwrap_or(defaults.restarts),
        seed,
    };
    if opts.rotation_tolerance.is_nan() || opts.rotation_tolerance <= 0.0 {
        return Err(CliError::usage("--tol must be positive"));
    }
    if opts.max_sweeps == 0 {
        return Err(CliError::usage("--max-sweeps must be at least 1"));
    }
    Ok(opts)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute { input, family, method, restarts, tol, max_sweeps, seed, json } => {
            let seed = resolve_seed(seed)?;
            let opts = jad_options(seed, restarts, tol, max_sweeps)?;
            let rho = match (input, family) {
                (Some(path), None) => statefile::read_state(&path)?,
                (None, Some(spec)) => {
                    let spec = family::parse_family_spec(&spec, seed)?;
                    skewcorr_core::states::build_state(&spec)
                        .map_err(|e| CliError::state(e.to_string()))?
                }
                _ => return Err(CliError::usage("exactly one of --input/--family is required")),
            };
            let result = compute_with_method(&rho, &method, &opts)?;
            print_compute_report(&rho, &result, json);
            Ok(())
        }
        Command::Sweep {
            family,
            m,
            from,
            to,
            steps,
            out,
            seed,
            restarts,
            tol,
            max_sweeps,
            threads,
        } => {
            let seed = resolve_seed(seed)?;
            let opts = jad_options(seed, restarts, tol, max_sweeps)?;
            let family = sweep::SweepFamily::parse(&family)?;
            let job = sweep::SweepJob { family, m, from, to, steps, opts, threads };
            let rows = sweep::run_sweep(&job)?;
            sweep::write_csv(&out, &job, &rows)?;
            println!("wrote {} rows to {}", rows.len(), out.display());
            Ok(())
        }
        Command::Validate { suite, seed, cases, input } => {
            let seed = resolve_seed(seed)?;
            let fixture = match input {
                Some(path) => Some(statefile::read_state(&path)?),
                None => None,
            };
            validate::run_suites(&suite, seed, cases, fixture.as_ref())
        }
        Command::Figures { which, out, seed, threads } => {
            let seed = resolve_seed(seed)?;
            sweep::write_figures(&which, &out, seed, threads)
        }
    }
}

fn compute_with_method(
    rho: &DensityMatrix,
    method: &str,
    opts: &JadOptions,
) -> Result<CorrelationResult, CliError> {
    let result = match method {
        "auto" => quantum_correlation(rho, opts),
        "jad" => q_general(rho, opts),
        "qubit" => {
            if rho.dim_a() != 2 {
                return Err(CliError::usage(format!(
                    "--method qubit needs m = 2, state has m = {}",
                    rho.dim_a()
                )));
            }
            q_qubit_qudit(rho)
        }
        "pure" => {
            if rho.purity() <= PURITY_THRESHOLD {
                return Err(CliError::usage(format!(
                    "--method pure needs a pure state, purity is {:.12}",
                    rho.purity()
                )));
            }
            let (_, vectors) = skewcorr_core::hermitian_eig(rho.mat())
                .map_err(|e| CliError::state(e.to_string()))?;
            let d = rho.dim();
            let psi: Vec<skewcorr_core::Complex64> =
                (0..d).map(|i| vectors[(i, d - 1)]).collect();
            q_pure(&psi, rho.dim_a(), rho.dim_b())
        }
        other => return Err(CliError::usage(format!("unknown method {other:?}"))),
    };
    result.map_err(|e| CliError::state(e.to_string()))
}

fn print_compute_report(rho: &DensityMatrix, result: &CorrelationResult, json: bool) {
    if json {
        let basis: Vec<Vec<[f64; 2]>> = result
            .optimal_basis
            .iter()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        let report = serde_json::json!({
            "q": result.q,
            "method": result.method.as_str(),
            "m": rho.dim_a(),
            "n": rho.dim_b(),
            "sweeps_used": result.sweeps_used(),
            "rotations_used": result.diagnostics.as_ref().map_or(0, |d| d.rotations_used),
            "converged": result.diagnostics.as_ref().map_or(true, |d| d.converged),
            "restart_index": result.diagnostics.as_ref().map_or(0, |d| d.restart_index),
            "optimal_basis": basis,
        });
        println!("{report}");
        return;
    }
    println!("q = {:.6}", result.q);
    println!("method = {}", result.method.as_str());
    println!("dims = {}x{}", rho.dim_a(), rho.dim_b());
    if let Some(diag) = &result.diagnostics {
        println!("sweeps_used = {}", diag.sweeps_used);
        println!("rotations_used = {}", diag.rotations_used);
        println!("converged = {}", diag.converged);
        println!("restart_index = {}", diag.restart_index);
    }
    println!("optimal basis:");
    for (k, v) in result.optimal_basis.iter().enumerate() {
        let parts: Vec<String> = v.iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
        println!("  k={k}: [{}]", parts.join(", "));
    }
}

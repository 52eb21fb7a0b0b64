//! Command-line front end for the `fairdisk` solver.
//!
//! Exit codes: 0 on success (optimal or heuristic result, valid result,
//! plot written), 2 when the solver reports infeasibility, 1 on any error
//! including a result that fails validation.

pub mod format;
pub mod plot;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fairdisk::{
    oracle_solve, solve, solve_heuristic_random, validate, HeuristicOptions, Instance, Sampling, ScanMode,
    SearchStats, SolverConfig, Tolerance, Witness,
};

use crate::format::{parse_instance, ResultDocument, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

/// Environment variable overriding the geometric tolerance.
pub const EPS_VAR: &str = "FAIRDISK_EPS";

#[derive(Debug, Parser)]
#[command(name = "fairdisk", version, about = "Exact fair k-center clustering on the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scan {
    Full,
    Binary,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WitnessArg {
    First,
    Any,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SamplingArg {
    Random,
    Exhaustive,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact optimum.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "binary")]
        scan: Scan,
        #[arg(long, value_enum, default_value = "off")]
        parallel: Switch,
        /// Which optimal witness to report when running in parallel.
        #[arg(long, value_enum, default_value = "first")]
        witness: WitnessArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best of sampled candidate disk sets.
    Heuristic {
        instance: PathBuf,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random")]
        sampling: SamplingArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive enumeration of all k^n labelings (tiny instances only).
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = fairdisk::oracle::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a result document against its instance.
    Validate { instance: PathBuf, result: PathBuf },
    /// Render an instance and result as SVG.
    Plot {
        instance: PathBuf,
        result: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn tolerance_from_env() -> Result<Tolerance> {
    match std::env::var(EPS_VAR) {
        Ok(v) => {
            let eps: f64 = v.trim().parse().with_context(|| format!("{EPS_VAR}={v:?} is not a number"))?;
            if !(eps.is_finite() && eps >= 0.0) {
                bail!("{EPS_VAR} must be a finite non-negative number, got {v:?}");
            }
            Ok(Tolerance::new(eps))
        }
        Err(_) => Ok(Tolerance::default()),
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_result(path: &Path) -> Result<ResultDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ResultDocument::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => stdout.write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn emit_result(doc: &ResultDocument, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<i32> {
    let mut text = doc.to_json();
    text.push('\n');
    emit(out, &text, stdout)?;
    Ok(if doc.status == Status::Infeasible { EXIT_INFEASIBLE } else { EXIT_OK })
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    let tol = tolerance_from_env()?;
    match cli.command {
        Command::Solve { instance, scan, parallel, witness, out } => {
            let inst = read_instance(&instance)?;
            let cfg = SolverConfig {
                tol,
                scan: match scan {
                    Scan::Full => ScanMode::Full,
                    Scan::Binary => ScanMode::Binary,
                },
                parallel: matches!(parallel, Switch::On),
                witness: match witness {
                    WitnessArg::First => Witness::Deterministic,
                    WitnessArg::Any => Witness::Any,
                },
            };
            let start = Instant::now();
            let report = solve(&inst, &cfg);
            let mode = match scan {
                Scan::Full => "exact-full",
                Scan::Binary => "exact-binary",
            };
            emit_result(&ResultDocument::from_report(&report, mode, elapsed_ms(start)), &out, stdout)
        }
        Command::Heuristic { instance, samples, seed, sampling, out } => {
            if samples == 0 {
                bail!("--samples must be at least 1");
            }
            let inst = read_instance(&instance)?;
            let cfg = SolverConfig { tol, ..Default::default() };
            let (sampling, mode) = match sampling {
                SamplingArg::Random => (Sampling::Random, "heuristic-random"),
                SamplingArg::Exhaustive => (Sampling::Exhaustive, "heuristic-exhaustive"),
            };
            let start = Instant::now();
            let report = solve_heuristic_random(&inst, &HeuristicOptions { samples, seed, sampling }, &cfg);
            emit_result(&ResultDocument::from_report(&report, mode, elapsed_ms(start)), &out, stdout)
        }
        Command::Oracle { instance, budget, out } => {
            let inst = read_instance(&instance)?;
            let start = Instant::now();
            let best = oracle_solve(&inst, budget, tol)?;
            let doc = ResultDocument::from_parts(best.as_ref(), true, &SearchStats::default(), "oracle", elapsed_ms(start));
            emit_result(&doc, &out, stdout)
        }
        Command::Validate { instance, result } => {
            let inst = read_instance(&instance)?;
            let doc = read_result(&result)?;
            let Some(clustering) = doc.clustering() else {
                writeln!(stdout, "infeasible result: nothing to validate")?;
                return Ok(EXIT_OK);
            };
            let violations = validate(&inst, &clustering, tol);
            if violations.is_empty() {
                writeln!(stdout, "valid")?;
                return Ok(EXIT_OK);
            }
            for v in &violations {
                writeln!(stdout, "violation: {v}")?;
            }
            Ok(EXIT_ERROR)
        }
        Command::Plot { instance, result, out } => {
            let inst = read_instance(&instance)?;
            let doc = read_result(&result)?;
            let clustering = doc.clustering();
            if let Some(c) = &clustering {
                let violations = validate(&inst, c, tol);
                if let Some(first) = violations.first() {
                    bail!("result does not validate against the instance ({} violations, first: {first})", violations.len());
                }
            }
            emit(&out, &plot::render_svg(&inst, clustering.as_ref()), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

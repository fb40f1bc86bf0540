//! Command-line wrapper over the library deciders.
//!
//! Exit codes are part of the interface: `0` success (whatever the
//! verdicts), `2` input error, `3` internal inconsistency (a hierarchy or
//! symmetry cross-check failed), `4` precondition failure (the requested
//! construction does not exist). The default tolerance can be overridden
//! by the `CHANNEL_ORDER_TOL` environment variable; an explicit `--tol`
//! flag wins over both.

use crate::channels::classify;
use crate::channels::OperatorMap;
use crate::compat::{
    channels_compatible, measurement_channel_compatible, CompatError, CompatOptions,
};
use crate::io::{
    self, channel_summary, compare_report_to_json, matrix_from_json, povm_to_json, theta_to_json,
    ChannelSpecFile, CompatReportJson, IoError, MatrixJson, PovmSpecFile, ReconstructReportJson,
    ThetaReportJson, SCHEMA_VERSION,
};
use crate::numkit::{fro_norm, psd_project, Tolerance};
use crate::povm::reconstruct_state;
use crate::preorder::{
    compare, construct_theta, witness_measurements, CompareOptions, PreorderError,
};
use crate::tomosim::{convergence_study, StudyOptions};
use crate::QuantumChannel;
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

/// Environment variable overriding the default tolerance.
pub const TOL_ENV_VAR: &str = "CHANNEL_ORDER_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "channel-order",
    version,
    about = "Compare quantum channels under post-processing and statistics-recovery preorders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full preorder comparison of two channels; writes a JSON report.
    Compare(CompareArgs),
    /// Construct the HPTP connecting map from channel A to channel B.
    Theta(ThetaArgs),
    /// Linear-inversion state reconstruction from outcome probabilities.
    Reconstruct(ReconstructArgs),
    /// Finite-sample tomography simulation over a shot grid; writes CSV.
    Simulate(SimulateArgs),
    /// Channel–channel or measurement–channel compatibility.
    Compat(CompatArgs),
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Channel spec JSON for the first channel.
    #[arg(long)]
    pub a: PathBuf,
    /// Channel spec JSON for the second channel.
    #[arg(long)]
    pub b: PathBuf,
    /// Output report path.
    #[arg(long)]
    pub out: PathBuf,
    /// Rank/kernel tolerance (absolute and relative).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Seed for the positivity probe.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Measurement spec JSON.
    #[arg(long)]
    pub povm: PathBuf,
    /// JSON array of outcome probabilities.
    #[arg(long)]
    pub probs: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Channel producing the measured statistics.
    #[arg(long)]
    pub a: PathBuf,
    /// Channel whose output is reconstructed.
    #[arg(long)]
    pub b: PathBuf,
    /// Input state as a JSON matrix of [re, im] pairs.
    #[arg(long)]
    pub state: PathBuf,
    /// Comma-separated ascending shot grid, e.g. 1000,10000,100000.
    #[arg(long)]
    pub shots: String,
    /// Number of independent seeds per grid point.
    #[arg(long, default_value_t = 100)]
    pub seeds: u64,
    /// Base offset added to the per-run seeds.
    #[arg(long, default_value_t = 0)]
    pub seed_base: u64,
    /// Rank/kernel tolerance for the connecting-map construction.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Apply a PSD projection (then renormalize the trace) to estimates.
    #[arg(long, default_value_t = false)]
    pub project_psd: bool,
    /// Per-run CSV output path; the summary CSV lands next to it with a
    /// `.summary.csv` suffix.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompatArgs {
    /// First channel (channel–channel mode).
    #[arg(long, conflicts_with_all = ["povm", "chan"])]
    pub a: Option<PathBuf>,
    /// Second channel (channel–channel mode).
    #[arg(long, requires = "a")]
    pub b: Option<PathBuf>,
    /// Measurement spec (measurement–channel mode).
    #[arg(long, requires = "chan")]
    pub povm: Option<PathBuf>,
    /// Channel spec (measurement–channel mode).
    #[arg(long)]
    pub chan: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

fn tolerance_from(flag: Option<f64>) -> Result<Tolerance, IoError> {
    let value = match flag {
        Some(v) => Some(v),
        None => match std::env::var(TOL_ENV_VAR) {
            Ok(text) => Some(text.parse::<f64>().map_err(|_| IoError::Field {
                field: TOL_ENV_VAR.into(),
                message: format!("not a float: {text}"),
            })?),
            Err(_) => None,
        },
    };
    match value {
        Some(v) => Tolerance::new(v, v).map_err(|e| IoError::Field {
            field: "tol".into(),
            message: e.to_string(),
        }),
        None => Ok(Tolerance::default()),
    }
}

fn load_channel(path: &Path) -> Result<QuantumChannel, IoError> {
    let spec: ChannelSpecFile = io::read_json(path)?;
    spec.into_channel()
}

fn input_error(err: impl std::fmt::Display) -> i32 {
    eprintln!("error: {err}");
    EXIT_INPUT
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Compare(args) => cmd_compare(args),
        Command::Theta(args) => cmd_theta(args),
        Command::Reconstruct(args) => cmd_reconstruct(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Compat(args) => cmd_compat(args),
    }
}

fn cmd_compare(args: CompareArgs) -> i32 {
    let tol = match tolerance_from(args.tol) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let a = match load_channel(&args.a) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let b = match load_channel(&args.b) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let options = CompareOptions {
        tol,
        seed: args.seed,
        ..CompareOptions::default()
    };
    match compare(&a, &b, &options) {
        Ok(report) => {
            let json = compare_report_to_json(&a, &b, &report);
            match io::write_json(&args.out, &json) {
                Ok(()) => EXIT_OK,
                Err(e) => input_error(e),
            }
        }
        Err(PreorderError::HierarchyViolation { direction }) => {
            eprintln!("internal inconsistency: hierarchy violated for {direction}");
            EXIT_INTERNAL
        }
        Err(PreorderError::InputDimMismatch(a, b)) => {
            input_error(format!("input dimensions differ: {a} vs {b}"))
        }
        Err(e) => input_error(e),
    }
}

fn cmd_theta(args: ThetaArgs) -> i32 {
    let tol = match tolerance_from(args.tol) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let a = match load_channel(&args.a) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let b = match load_channel(&args.b) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    match construct_theta(&a, &b, &tol) {
        Ok(theta) => {
            let residual = fro_norm(&(theta.transfer() * a.transfer() - b.transfer()));
            let classification = classify(
                &theta,
                crate::channels::DEFAULT_POSITIVITY_PROBES,
                args.seed,
            );
            let report = ThetaReportJson {
                schema_version: SCHEMA_VERSION.into(),
                kind: "theta".into(),
                a: channel_summary(&a),
                b: channel_summary(&b),
                theta: theta_to_json(&theta, &classification, residual),
            };
            match io::write_json(&args.out, &report) {
                Ok(()) => EXIT_OK,
                Err(e) => input_error(e),
            }
        }
        Err(PreorderError::KernelInclusionFailed {
            max_leak,
            threshold,
        }) => {
            eprintln!(
                "precondition failed: no trace-preserving Hermitian-preserving map connects \
                 these channels; the kernel of the first must sit inside the kernel of the \
                 second, but a kernel vector leaks through with norm {max_leak:.3e} \
                 (threshold {threshold:.3e})"
            );
            EXIT_PRECONDITION
        }
        Err(PreorderError::InputDimMismatch(a, b)) => {
            input_error(format!("input dimensions differ: {a} vs {b}"))
        }
        Err(e) => input_error(e),
    }
}

fn cmd_reconstruct(args: ReconstructArgs) -> i32 {
    let spec: PovmSpecFile = match io::read_json(&args.povm) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    let povm = match spec.into_povm() {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let probs: Vec<f64> = match io::read_json(&args.probs) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    match reconstruct_state(&povm, &probs) {
        Ok(rec) => {
            let trace = rec.estimate.trace();
            let report = ReconstructReportJson {
                schema_version: SCHEMA_VERSION.into(),
                kind: "reconstruct".into(),
                estimate: io::matrix_to_json(&rec.estimate),
                psd: rec.psd,
                trace: [trace.re, trace.im],
            };
            match io::write_json(&args.out, &report) {
                Ok(()) => EXIT_OK,
                Err(e) => input_error(e),
            }
        }
        Err(e) => input_error(e),
    }
}

fn parse_shot_grid(text: &str) -> Result<Vec<u64>, IoError> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|_| IoError::Field {
                field: "shots".into(),
                message: format!("not an integer: {part}"),
            })
        })
        .collect()
}

fn cmd_simulate(args: SimulateArgs) -> i32 {
    let a = match load_channel(&args.a) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let b = match load_channel(&args.b) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let state_json: MatrixJson = match io::read_json(&args.state) {
        Ok(m) => m,
        Err(e) => return input_error(e),
    };
    let rho = match matrix_from_json(&state_json, "state") {
        Ok(m) => m,
        Err(e) => return input_error(e),
    };
    let grid = match parse_shot_grid(&args.shots) {
        Ok(g) => g,
        Err(e) => return input_error(e),
    };
    if rho.nrows() != a.din() || rho.ncols() != a.din() {
        return input_error(format!(
            "state must be {0}x{0} to match the channels' input space",
            a.din()
        ));
    }
    let tol = match tolerance_from(args.tol) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    // the measurement pair realizing the statistics identity comes from
    // the connecting map, so the estimator converges to b(rho) exactly
    let theta = match construct_theta(&a, &b, &tol) {
        Ok(t) => t,
        Err(PreorderError::KernelInclusionFailed {
            max_leak,
            threshold,
        }) => {
            eprintln!(
                "precondition failed: the second channel's output is not recoverable from \
                 the first channel's statistics; a kernel vector leaks through with norm \
                 {max_leak:.3e} (threshold {threshold:.3e})"
            );
            return EXIT_PRECONDITION;
        }
        Err(e) => return input_error(e),
    };
    let (m1, m2) = match witness_measurements(&theta) {
        Ok(pair) => pair,
        Err(e) => return input_error(e),
    };
    let options = StudyOptions {
        exact_probabilities: false,
        seed_base: args.seed_base,
    };
    let mut study = match convergence_study(&a, &b, &m1, &m2, &rho, &grid, args.seeds, &options) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    if args.project_psd {
        // recompute run errors against the projected, renormalized estimate
        let exact = match b.apply(&rho) {
            Ok(x) => x,
            Err(e) => return input_error(e),
        };
        for (shots, seed, error) in study.runs.iter_mut() {
            let run = match crate::tomosim::run_once(&a, &b, &m1, &m2, &rho, *shots, *seed) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            let projected = match psd_project(&run.estimate) {
                Ok(p) => p,
                Err(e) => return input_error(e),
            };
            let tr = projected.trace().re;
            let renorm = if tr > 0.0 {
                projected.unscale(tr)
            } else {
                projected
            };
            *error = fro_norm(&(renorm - &exact));
        }
    }
    if let Err(e) = io::write_runs_csv(&args.out, &study.runs) {
        return input_error(e);
    }
    let summary_path = args.out.with_extension("summary.csv");
    if let Err(e) = io::write_summary_csv(&summary_path, &study.rows) {
        return input_error(e);
    }
    if let Some(slope) = study.slope {
        println!("log-log slope of median error vs shots: {slope:.4}");
    }
    EXIT_OK
}

fn cmd_compat(args: CompatArgs) -> i32 {
    let options = CompatOptions::default();
    match (&args.a, &args.b, &args.povm, &args.chan) {
        (Some(a_path), Some(b_path), None, None) => {
            let a = match load_channel(a_path) {
                Ok(c) => c,
                Err(e) => return input_error(e),
            };
            let b = match load_channel(b_path) {
                Ok(c) => c,
                Err(e) => return input_error(e),
            };
            match channels_compatible(&a, &b, &options) {
                Ok((compatible, evidence)) => {
                    let report = CompatReportJson {
                        schema_version: SCHEMA_VERSION.into(),
                        kind: "compat".into(),
                        mode: "channels".into(),
                        compatible,
                        verdict: (&evidence.verdict_12).into(),
                        mirrored_verdict: evidence.verdict_21.as_ref().map(Into::into),
                        recovered_measurement: None,
                    };
                    match io::write_json(&args.out, &report) {
                        Ok(()) => EXIT_OK,
                        Err(e) => input_error(e),
                    }
                }
                Err(CompatError::AsymmetricVerdict { first, second }) => {
                    eprintln!(
                        "internal inconsistency: conjugate-direction verdicts disagree \
                         ({first} vs {second})"
                    );
                    EXIT_INTERNAL
                }
                Err(e) => input_error(e),
            }
        }
        (None, None, Some(povm_path), Some(chan_path)) => {
            let spec: PovmSpecFile = match io::read_json(povm_path) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let povm = match spec.into_povm() {
                Ok(p) => p,
                Err(e) => return input_error(e),
            };
            let chan = match load_channel(chan_path) {
                Ok(c) => c,
                Err(e) => return input_error(e),
            };
            match measurement_channel_compatible(&povm, &chan, &options) {
                Ok((compatible, evidence)) => {
                    let report = CompatReportJson {
                        schema_version: SCHEMA_VERSION.into(),
                        kind: "compat".into(),
                        mode: "measurement_channel".into(),
                        compatible,
                        verdict: (&evidence.verdict).into(),
                        mirrored_verdict: None,
                        recovered_measurement: evidence.recovered.as_ref().map(povm_to_json),
                    };
                    match io::write_json(&args.out, &report) {
                        Ok(()) => EXIT_OK,
                        Err(e) => input_error(e),
                    }
                }
                Err(e) => input_error(e),
            }
        }
        _ => input_error(
            "compat needs either --a and --b (channel pair) or --povm and --chan \
             (measurement–channel)",
        ),
    }
}

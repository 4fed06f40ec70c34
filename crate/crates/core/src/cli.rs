//! Command-line front end.
//!
//! Every command prints one JSON document (to stdout, or to `--report` when
//! given) and a short human summary on stderr. Exit codes: 0 on success,
//! 1 when a validation fails (zero Carleson constant, node residual or norm
//! bound exceeded, audit failure), 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::audit::{run_audit, LEMMA_IDS};
use crate::ball::{BallPoint, CVector};
use crate::beurling::{sort_by_norm, BeurlingSystem, SystemFile};
use crate::error::Error;
use crate::interpolation::{estimate_constant, make_interpolant, DEFAULT_BOUNDARY_FRACTION};
use crate::metric::{carleson_delta, hayman_newman_check, hayman_newman_ratio};
use crate::sequence::{
    generate, load_sequence, load_values, read_json, save_sequence, to_json_line, write_json, GeneratorKind,
    GeneratorSpec, PointSequence,
};
use crate::tolerances::Tolerances;

#[derive(Debug, Parser)]
#[command(
    name = "beurling",
    version,
    about = "Carleson interpolation on the unit ball of C^d",
    long_about = "Generate point sequences, check the Carleson condition, build explicit \
                  Beurling interpolating functions, evaluate interpolants and audit the \
                  supporting inequalities. Tolerances can be overridden with the \
                  BEURLING_TOL environment variable (a JSON object)."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a point sequence file.
    Gen(GenArgs),
    /// Compute the Carleson constant and Hayman-Newman status of a sequence.
    Check(CheckArgs),
    /// Build the Beurling system for a sequence.
    Build(BuildArgs),
    /// Check that the interpolant takes the target values at the nodes.
    Verify(VerifyArgs),
    /// Estimate the interpolation constant by sampling and compare with the bound.
    Bound(BoundArgs),
    /// Evaluate the interpolant at one point.
    Eval(EvalArgs),
    /// Run randomized audits of the supporting inequalities.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
struct ReportArg {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GeneratorKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Ratio of consecutive gaps 1 - r_k (radial and orthogonal kinds).
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    /// First radius (radial and orthogonal kinds).
    #[arg(long, default_value_t = 0.0)]
    r0: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    label: Option<String>,
    /// Sequence file to write; printed to stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    sequence: PathBuf,
    /// Ratio for the Hayman-Newman test; only the minimal ratio is reported when omitted.
    #[arg(long)]
    c: Option<f64>,
    #[command(flatten)]
    report: ReportArg,
}

#[derive(Debug, Args)]
struct BuildArgs {
    sequence: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    report: ReportArg,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    system: PathBuf,
    alpha: PathBuf,
    #[command(flatten)]
    report: ReportArg,
}

#[derive(Debug, Args)]
struct BoundArgs {
    system: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BOUNDARY_FRACTION)]
    boundary_fraction: f64,
    #[command(flatten)]
    report: ReportArg,
}

#[derive(Debug, Args)]
struct EvalArgs {
    system: PathBuf,
    alpha: PathBuf,
    /// Evaluation point as JSON, e.g. '[[0.1,0.0],[0.0,-0.2]]'.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[command(flatten)]
    report: ReportArg,
}

#[derive(Debug, Args)]
struct AuditArgs {
    /// Audit id, or `all`.
    #[arg(long, default_value = "all")]
    lemma: String,
    /// Trials per audit; each audit has its own default when omitted.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    report: ReportArg,
}

#[derive(Debug)]
enum Failure {
    /// Exit code 1.
    Validation(String),
    /// Exit code 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CarlesonZero { .. } | Error::CarlesonBelowThreshold { .. } | Error::Conditioning { .. } => {
                Failure::Validation(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = std::result::Result<bool, Failure>;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    seed: Option<u64>,
    tolerances: &'a Tolerances,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(
    dest: &Option<PathBuf>,
    command: &str,
    seed: Option<u64>,
    tol: &Tolerances,
    body: T,
) -> std::result::Result<(), Failure> {
    let env = Envelope { command, seed, tolerances: tol, body };
    match dest {
        Some(path) => write_json(path, &env)?,
        None => print!("{}", to_json_line(&env)),
    }
    Ok(())
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    let tol = match Tolerances::from_env() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => cmd_gen(a, &tol),
        Command::Check(a) => cmd_check(a, &tol),
        Command::Build(a) => cmd_build(a, &tol),
        Command::Verify(a) => cmd_verify(a, &tol),
        Command::Bound(a) => cmd_bound(a, &tol),
        Command::Eval(a) => cmd_eval(a, &tol),
        Command::Audit(a) => cmd_audit(a, &tol),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn hayman_newman_summary(seq: &PointSequence, c: Option<f64>) -> Value {
    let (sorted, _) = sort_by_norm(seq);
    let max_ratio = hayman_newman_ratio(&sorted);
    json!({
        "c": c,
        "max_ratio": max_ratio,
        "satisfied": c.map(|c| hayman_newman_check(&sorted, c)),
        "satisfied_for_some_c": max_ratio.is_none_or(|r| r < 1.0),
    })
}

fn cmd_gen(a: GenArgs, tol: &Tolerances) -> CmdResult {
    let spec = GeneratorSpec { kind: a.kind, n: a.n, dim: a.dim, c: a.c, r0: a.r0, seed: a.seed };
    let mut seq = generate(&spec)?;
    if let Some(label) = a.label {
        seq = PointSequence::new(seq.into_points(), label)?;
    }
    let report = carleson_delta(&seq, tol);
    let hn = hayman_newman_summary(&seq, None);
    eprintln!(
        "generated {} points in dimension {}: delta = {:e}, Hayman-Newman max ratio = {}",
        seq.len(),
        seq.dim(),
        report.delta,
        hn["max_ratio"]
    );
    let summary = json!({
        "generator": spec,
        "n": seq.len(),
        "dim": seq.dim(),
        "delta": report.delta,
        "carleson_satisfied": report.satisfied,
        "hayman_newman": hn,
        "output": a.output,
    });
    match &a.output {
        Some(path) => {
            save_sequence(&seq, path)?;
            emit(&None, "gen", Some(a.seed), tol, summary)?;
        }
        None => print!("{}", to_json_line(&seq)),
    }
    Ok(true)
}

fn cmd_check(a: CheckArgs, tol: &Tolerances) -> CmdResult {
    if let Some(c) = a.c {
        if !(c > 0.0 && c < 1.0) {
            return Err(Failure::Input(format!("--c = {c} must lie in (0, 1)")));
        }
    }
    let seq = load_sequence(&a.sequence)?;
    let report = carleson_delta(&seq, tol);
    let hn = hayman_newman_summary(&seq, a.c);
    match report.coincident {
        Some((i, j)) => eprintln!("points {i} and {j} coincide: delta = 0"),
        None => eprintln!(
            "delta = {:e} ({}), n = {}",
            report.delta,
            if report.satisfied { "Carleson condition holds" } else { "below threshold" },
            seq.len()
        ),
    }
    let ok = report.satisfied;
    emit(
        &a.report.report,
        "check",
        None,
        tol,
        json!({
            "label": seq.label(),
            "n": seq.len(),
            "dim": seq.dim(),
            "carleson": report,
            "hayman_newman": hn,
        }),
    )?;
    Ok(ok)
}

fn cmd_build(a: BuildArgs, tol: &Tolerances) -> CmdResult {
    let seq = load_sequence(&a.sequence)?;
    let sys = BeurlingSystem::build(&seq, tol)?;
    write_json(&a.output, &sys.to_file())?;
    eprintln!(
        "built {} Beurling functions: delta = {:e}, C_delta = {}, bound = {}",
        sys.len(),
        sys.delta(),
        sys.c_delta(),
        sys.bound()
    );
    emit(
        &a.report.report,
        "build",
        None,
        tol,
        json!({
            "n": sys.len(),
            "dim": sys.dim(),
            "delta": sys.delta(),
            "C_delta": sys.c_delta(),
            "bound": sys.bound(),
            "output": a.output,
        }),
    )?;
    Ok(true)
}

fn load_system(path: &Path, tol: &Tolerances) -> std::result::Result<BeurlingSystem, Failure> {
    let file: SystemFile = read_json(path)?;
    Ok(BeurlingSystem::from_file(file, tol)?)
}

fn cmd_verify(a: VerifyArgs, tol: &Tolerances) -> CmdResult {
    let sys = load_system(&a.system, tol)?;
    let alpha = load_values(&a.alpha)?;
    let f = make_interpolant(&sys, alpha)?;
    let nodes = f.verify_nodes();
    let threshold = tol.node_residual * f.sup_alpha().max(1.0);
    let passed = nodes.max_residual <= threshold;
    eprintln!(
        "max node residual {:e} (threshold {:e}): {}",
        nodes.max_residual,
        threshold,
        if passed { "PASS" } else { "FAIL" }
    );
    emit(
        &a.report.report,
        "verify",
        None,
        tol,
        json!({
            "max_residual": nodes.max_residual,
            "per_node_residuals": nodes.per_node_residuals,
            "threshold": threshold,
            "passed": passed,
        }),
    )?;
    Ok(passed)
}

fn cmd_bound(a: BoundArgs, tol: &Tolerances) -> CmdResult {
    if a.samples == 0 {
        return Err(Failure::Input("--samples must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&a.boundary_fraction) {
        return Err(Failure::Input("--boundary-fraction must lie in [0, 1]".into()));
    }
    let sys = load_system(&a.system, tol)?;
    let est = estimate_constant(&sys, a.samples, a.seed, a.boundary_fraction);
    let passed = est.empirical_sup <= est.theoretical_bound * (1.0 + tol.bound_rel);
    eprintln!(
        "empirical sup {:.6} vs bound {:.6} (ratio {:.3e}): {}",
        est.empirical_sup,
        est.theoretical_bound,
        est.ratio(),
        if passed { "PASS" } else { "FAIL" }
    );
    emit(
        &a.report.report,
        "bound",
        Some(a.seed),
        tol,
        json!({
            "delta": sys.delta(),
            "C_delta": sys.c_delta(),
            "boundary_fraction": a.boundary_fraction,
            "empirical_sup": est.empirical_sup,
            "samples_used": est.samples_used,
            "theoretical_bound": est.theoretical_bound,
            "ratio": est.ratio(),
            "argmax_point": est.argmax_point,
            "passed": passed,
        }),
    )?;
    Ok(passed)
}

fn cmd_eval(a: EvalArgs, tol: &Tolerances) -> CmdResult {
    let sys = load_system(&a.system, tol)?;
    let alpha = load_values(&a.alpha)?;
    let coords: Vec<Complex64> = serde_json::from_str(&a.point).map_err(|e| Failure::Input(format!("--point: {e}")))?;
    let point = BallPoint::new(CVector::new(coords)?)?;
    let f = make_interpolant(&sys, alpha)?;
    let value = f.evaluate(&point)?;
    eprintln!("f(x) = {} + {}i", value.re, value.im);
    emit(&a.report.report, "eval", None, tol, json!({ "point": point, "value": value }))?;
    Ok(true)
}

fn cmd_audit(a: AuditArgs, tol: &Tolerances) -> CmdResult {
    if a.lemma != "all" && !LEMMA_IDS.contains(&a.lemma.as_str()) {
        return Err(Failure::Input(format!(
            "unknown lemma id `{}`; expected one of: all, {}",
            a.lemma,
            LEMMA_IDS.join(", ")
        )));
    }
    let reports = run_audit(&a.lemma, a.trials, a.seed, tol)?;
    let passed = reports.iter().all(|r| r.passed());
    for r in &reports {
        eprintln!(
            "{:<14} trials {:>7}  failures {:>3}  worst {:+.3e}  {}",
            r.lemma_id,
            r.trials,
            r.failures,
            r.worst_margin,
            if r.passed() { "PASS" } else { "FAIL" }
        );
    }
    emit(&a.report.report, "audit", Some(a.seed), tol, json!({ "reports": reports, "passed": passed }))?;
    Ok(passed)
}

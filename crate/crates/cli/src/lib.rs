//! Command implementations for the `simplex-metrics` binary.
//!
//! Every command returns its stdout text and an exit code, so the binary is
//! a thin wrapper and the commands can be tested in-process.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use simplex_metrics::riemannian::{MetricDocument, RiemannError};
use simplex_metrics::sdg_verify::{run_suite, Status, SuiteConfig, CHECK_NAMES};
use simplex_metrics::simplex_volume::{
    cm_factor, run_comparison_trials, square_distances_of, vol2_cm, vol2_gram, Simplex,
    SquareDistanceData, TrialConfig, VolumeError,
};
use simplex_metrics::{parse_rational, Execution, LinalgError, Rational, RationalMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DIMENSION: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "simplex-metrics", version, about = "Exact square-volumes of simplices and polynomial-identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Square-volume of one simplex.
    Volume(VolumeArgs),
    /// Cayley-Menger factors 1/(-(-2)^k (k!)^2).
    Factors {
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// det(C)/(-(-2)^k) = det(Y^T Y) on random integer simplices.
    Compare(CompareArgs),
    /// Run the polynomial-identity suite, one JSON report per line.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Cm,
    Gram,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct VolumeArgs {
    /// JSON file {"points": [[...], ...]}.
    #[arg(long, conflicts_with = "distances", required_unless_present = "distances")]
    pub simplex: Option<PathBuf>,
    /// JSON file {"g": [[...], ...]} of square distances.
    #[arg(long)]
    pub distances: Option<PathBuf>,
    /// JSON metric document; constant entries only.
    #[arg(long, requires = "simplex")]
    pub metric: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
}

#[derive(Debug, clap::Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 3)]
    pub max_k: usize,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    #[arg(long, env = "SIMPLEX_METRICS_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Disable data parallelism.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, default_value_t = 3)]
    pub max_k: usize,
    #[arg(long, env = "SIMPLEX_METRICS_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Run a single check.
    #[arg(long)]
    pub only: Option<String>,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Dimension(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Dimension(_) => EXIT_DIMENSION,
        }
    }
}

impl From<VolumeError> for CliError {
    fn from(e: VolumeError) -> Self {
        match e {
            VolumeError::DimensionMismatch(_) | VolumeError::Linalg(LinalgError::DimensionMismatch(_)) => {
                CliError::Dimension(e.to_string())
            }
            VolumeError::Linalg(LinalgError::NonSquare { .. }) => CliError::Dimension(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RiemannError> for CliError {
    fn from(e: RiemannError) -> Self {
        match e {
            RiemannError::DimensionMismatch(_) => CliError::Dimension(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Stdout text and exit code of a finished command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn lines(lines: Vec<String>, code: i32) -> Self {
        let mut stdout = lines.join("\n");
        stdout.push('\n');
        Outcome { stdout, code }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Volume(args) => cmd_volume(&args),
        Command::Factors { max_k } => Ok(cmd_factors(max_k)),
        Command::Compare(args) => Ok(cmd_compare(&args)),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplexDocument {
    points: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistanceDocument {
    g: Vec<Vec<String>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>, CliError> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_rational(s).ok_or_else(|| CliError::Input(format!("not a rational: {s:?}"))))
                .collect()
        })
        .collect()
}

pub fn load_simplex(path: &Path) -> Result<Simplex, CliError> {
    let doc: SimplexDocument = read_json(path)?;
    if doc.points.is_empty() {
        return Err(CliError::Input("a simplex needs at least one point".into()));
    }
    let points = parse_rows(&doc.points)?;
    if points.iter().any(|p| p.len() != points[0].len()) {
        return Err(CliError::Dimension("points have different lengths".into()));
    }
    Ok(Simplex::new(points)?)
}

pub fn load_distances(path: &Path) -> Result<SquareDistanceData, CliError> {
    let doc: DistanceDocument = read_json(path)?;
    let rows = parse_rows(&doc.g)?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(CliError::Dimension("square-distance table must be square and non-empty".into()));
    }
    Ok(SquareDistanceData::from_rows(rows)?)
}

/// Constant metric matrix from a metric document.
pub fn load_constant_metric(path: &Path) -> Result<RationalMatrix, CliError> {
    let doc: MetricDocument = read_json(path)?;
    let field = doc.to_field()?;
    if field.max_entry_degree() > 0 {
        return Err(CliError::Input("volume accepts constant metrics only".into()));
    }
    field
        .at_rational(&vec![Rational::from_integer(0.into()); field.n_dim()])
        .ok_or_else(|| CliError::Input("metric entries must be rational constants".into()))
}

pub fn cmd_volume(args: &VolumeArgs) -> Result<Outcome, CliError> {
    if let Some(path) = &args.distances {
        let d = load_distances(path)?;
        if args.method == Method::Gram {
            return Err(CliError::Input("the gram method needs coordinates (--simplex)".into()));
        }
        let line = json!({"k": d.dim_k(), "method": "cm", "vol2": vol2_cm(&d).to_string()});
        return Ok(Outcome::lines(vec![line.to_string()], EXIT_OK));
    }
    let path = args
        .simplex
        .as_ref()
        .ok_or_else(|| CliError::Input("one of --simplex or --distances is required".into()))?;
    let s = load_simplex(path)?;
    let g = match &args.metric {
        Some(p) => load_constant_metric(p)?,
        None => RationalMatrix::identity(s.ambient_dim()),
    };
    if g.rows() != s.ambient_dim() {
        return Err(CliError::Dimension(format!(
            "metric of size {} for points in dimension {}",
            g.rows(),
            s.ambient_dim()
        )));
    }
    let cm = || -> Result<Rational, CliError> { Ok(vol2_cm(&square_distances_of(&s, &g)?)) };
    let gram = || -> Result<Rational, CliError> { Ok(vol2_gram(&s, &g)?) };
    let k = s.dim_k();
    let (line, code) = match args.method {
        Method::Cm => (json!({"k": k, "method": "cm", "vol2": cm()?.to_string()}), EXIT_OK),
        Method::Gram => (json!({"k": k, "method": "gram", "vol2": gram()?.to_string()}), EXIT_OK),
        Method::Both => {
            let (a, b) = (cm()?, gram()?);
            let agree = a == b;
            let mut v = json!({"k": k, "method": "both", "cm": a.to_string(), "gram": b.to_string(), "agree": agree});
            if agree {
                v["vol2"] = Value::String(a.to_string());
            }
            (v, if agree { EXIT_OK } else { EXIT_FAILURE })
        }
    };
    Ok(Outcome::lines(vec![line.to_string()], code))
}

/// Factor for row `k` of the table. Row 0 is the square-volume of a point, 1.
pub fn factor_row(k: usize) -> Rational {
    if k == 0 {
        Rational::from_integer(1.into())
    } else {
        cm_factor(k)
    }
}

pub fn cmd_factors(max_k: usize) -> Outcome {
    let lines = (0..=max_k).map(|k| format!("{k}\t{}", factor_row(k))).collect();
    Outcome::lines(lines, EXIT_OK)
}

pub fn cmd_compare(args: &CompareArgs) -> Outcome {
    let config = TrialConfig::new(args.trials, args.max_k, args.max_n, args.seed);
    let trials = run_comparison_trials(&config, execution(args.sequential));
    let mut lines = Vec::new();
    for t in trials.iter().filter(|t| !t.passed()) {
        let points: Vec<Vec<String>> = t
            .simplex
            .points()
            .iter()
            .map(|p| p.iter().map(ToString::to_string).collect())
            .collect();
        lines.push(
            json!({
                "failed_trial": t.index,
                "points": points,
                "report": t.report,
                "volumes_agree": t.volumes_agree,
            })
            .to_string(),
        );
    }
    let passed = trials.iter().filter(|t| t.passed()).count();
    lines.push(
        json!({
            "trials": trials.len(),
            "passed": passed,
            "failed": trials.len() - passed,
            "seed": args.seed,
            "max_k": args.max_k,
            "max_n": args.max_n,
        })
        .to_string(),
    );
    let code = if passed == trials.len() { EXIT_OK } else { EXIT_FAILURE };
    Outcome::lines(lines, code)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let config = SuiteConfig {
        max_n: args.max_n,
        max_k: args.max_k,
        seed: args.seed,
        only: args.only.clone(),
    };
    let reports = run_suite(&config, execution(args.sequential)).map_err(|e| {
        CliError::Input(format!("{e}; known checks: {}", CHECK_NAMES.join(", ")))
    })?;
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    let lines = reports.iter().map(|r| r.to_json_line()).collect();
    Ok(Outcome::lines(lines, if failed { EXIT_FAILURE } else { EXIT_OK }))
}

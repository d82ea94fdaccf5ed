//! Command-line front end.

mod commands;
pub mod family;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use family::{Family, Limit, Model, ParamArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use crate::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(E::InvalidParams(_) | E::Domain(_) | E::Strip { .. }) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "subord",
    version,
    about = "Densities of stable and tempered subordinators and their inverses"
)]
#[command(args_override_self = true)]
pub struct Cli {
    /// File of `key = value` lines using the long flag names; flags given on
    /// the command line take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a density on a grid and write CSV.
    Eval(EvalArgs),
    /// Check a density against an independent oracle.
    Compare(CompareArgs),
    /// Draw variates and write them as a one-column CSV.
    Sample(SampleArgs),
    /// Report the behaviour of a density as x -> 0+.
    Limit(LimitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub x_min: f64,
    #[arg(long)]
    pub x_max: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
}

/// Validated evaluation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, points: usize, spacing: Spacing) -> CliResult<Self> {
        if !(x_min > 0.0 && x_min.is_finite()) {
            return Err(CliError::Usage(format!(
                "--x-min must be positive, got {x_min}"
            )));
        }
        if !(x_max > x_min && x_max.is_finite()) {
            return Err(CliError::Usage(format!(
                "--x-max must exceed --x-min ({x_max} <= {x_min})"
            )));
        }
        if points < 2 {
            return Err(CliError::Usage("--points must be at least 2".into()));
        }
        Ok(Self {
            x_min,
            x_max,
            points,
            spacing,
        })
    }

    pub fn from_args(a: &GridArgs) -> CliResult<Self> {
        Self::new(a.x_min, a.x_max, a.points, a.spacing)
    }

    /// Grid points in ascending order; the end points are exact.
    pub fn points(&self) -> Vec<f64> {
        let n = self.points - 1;
        let mut xs: Vec<f64> = (0..=n)
            .map(|i| {
                let f = i as f64 / n as f64;
                match self.spacing {
                    Spacing::Linear => self.x_min + (self.x_max - self.x_min) * f,
                    Spacing::Log => (self.x_min.ln() + (self.x_max / self.x_min).ln() * f).exp(),
                }
            })
            .collect();
        xs[0] = self.x_min;
        xs[n] = self.x_max;
        xs
    }
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub density: Family,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long)]
    pub gnuplot: bool,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Mc,
    Mellin,
    Laplace,
    ClosedForm,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long, value_enum)]
    pub density: Family,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum)]
    pub oracle: OracleKind,
    /// Relative tolerance per point (KDE error for mc).
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    /// Sample size for mc.
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.1)]
    pub x_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
    /// Variable in which the mc kernel estimate is formed.
    #[arg(long, value_enum, default_value_t = crate::oracle::KdeSpace::Log)]
    pub kde_space: crate::oracle::KdeSpace,
    /// Write one JSON object per compared point here ("-" for stdout).
    #[arg(long)]
    pub jsonl: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub process: Family,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    #[arg(long, value_enum)]
    pub density: Family,
    #[command(flatten)]
    pub params: ParamArgs,
}

/// Splices the `--config` file into the argument list just after the
/// subcommand, so flags typed later override it.
fn expand_config(args: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let mut out = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy().into_owned();
        if s == "--config" {
            path = Some(
                it.next()
                    .ok_or_else(|| CliError::Usage("--config needs a path".into()))?,
            );
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(p.into());
        } else {
            out.push(a);
        }
    }
    let Some(path) = path else { return Ok(out) };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        CliError::Usage(format!(
            "cannot read config {}: {e}",
            path.to_string_lossy()
        ))
    })?;
    let mut extra = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key = value", i + 1))
        })?;
        let (k, v) = (k.trim().replace('_', "-"), v.trim());
        match v {
            "true" => extra.push(format!("--{k}")),
            "false" => {}
            _ => {
                extra.push(format!("--{k}"));
                extra.push(v.to_string());
            }
        }
    }
    let sub = out
        .iter()
        .position(|a| matches!(a.to_str(), Some("eval" | "compare" | "sample" | "limit")))
        .unwrap_or(out.len());
    let tail = out.split_off((sub + 1).min(out.len()));
    out.extend(extra.into_iter().map(OsString::from));
    out.extend(tail);
    Ok(out)
}

/// Runs the command line and returns the process exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let args = match expand_config(args.into_iter().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let res = match &cli.command {
        Command::Eval(a) => commands::eval(a),
        Command::Compare(a) => commands::compare(a),
        Command::Sample(a) => commands::sample(a),
        Command::Limit(a) => commands::limit(a),
    };
    match res {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Shortest decimal that round-trips, switching to exponent form outside
/// [1e-5, 1e16) like `%.17g`.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

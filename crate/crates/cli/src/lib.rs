//! `linecert`: construct, verify and bound finite line sets from the command
//! line. Every run prints a report whose header echoes the resolved
//! configuration. Exit codes: 0 pass, 2 usage or malformed input, 3 internal
//! failure, 4 failed certification.

pub mod commands;
pub mod report;
pub mod summary;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use group_graph_code::CodeLineVariant;
use lineset_core::{LineSetError, DEFAULT_TOL};
use scheme_algebra::DEFAULT_SEED;

pub use report::{Format, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_CERTIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "linecert", version, about = "Construct and certify finite sets of lines")]
pub struct Cli {
    /// Numerical tolerance (default 1e-9; `verify` and `scheme` default to the file's own).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized steps (simultaneous diagonalization).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a line set and write it as JSON.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Certify a line set file.
    Verify(VerifyArgs),
    /// Tabulate bounds for a dimension.
    Bounds(BoundsArgs),
    /// Association-scheme, Gram-algebra and Seidel analysis of a line set file.
    Scheme(SchemeArgs),
    /// Write derived artifacts (angle tables, Gram matrices, graphs).
    Export {
        #[command(subcommand)]
        what: Export,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MubMethod {
    Wf,
    Alltop,
    Spin,
    Rds,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FiducialChoice {
    Builtin,
    Appleby,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Mutually unbiased bases.
    Mub(MubArgs),
    /// Weyl–Heisenberg orbit of a fiducial vector.
    Sic(SicArgs),
    /// Lines from difference sets, codes or real doubling.
    Lines(LinesArgs),
}

#[derive(Debug, Args)]
pub struct MubArgs {
    #[arg(long)]
    pub dim: u64,
    #[arg(long, value_enum, default_value_t = MubMethod::Wf)]
    pub method: MubMethod,
    /// Keep only the first k bases.
    #[arg(long)]
    pub bases: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SicArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = FiducialChoice::Builtin)]
    pub fiducial: FiducialChoice,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["singer", "diffset", "code", "double"])))]
pub struct LinesArgs {
    /// Singer difference set over GF(q³).
    #[arg(long)]
    pub singer: Option<u64>,
    /// Difference-set JSON `{orders, D, N?}`.
    #[arg(long)]
    pub diffset: Option<PathBuf>,
    /// Linear code CSV.
    #[arg(long)]
    pub code: Option<PathBuf>,
    /// Real doubling of a complex line set file.
    #[arg(long)]
    pub double: Option<PathBuf>,
    #[arg(long, default_value = "gf-balanced", value_parser = parse_variant)]
    pub variant: CodeLineVariant,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn parse_variant(s: &str) -> Result<CodeLineVariant, String> {
    s.parse().map_err(|e: group_graph_code::GgcError| e.to_string())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expectation {
    Mub,
    Sic,
    Equiangular,
    Tight,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    /// Certifications to require; may be repeated.
    #[arg(long, value_enum)]
    pub expect: Vec<Expectation>,
    /// Require design strength at least t.
    #[arg(long)]
    pub strength: Option<usize>,
    /// Add scheme and Gram-algebra checks.
    #[arg(long)]
    pub deep: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub dim: u32,
    /// Comma-separated angles |⟨a,b⟩|², as p/q or decimals.
    #[arg(long)]
    pub angles: Option<String>,
    /// Add the real-space bounds.
    #[arg(long)]
    pub real: bool,
    /// Number of lines for the Welch bound.
    #[arg(long)]
    pub lines: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    pub input: PathBuf,
    /// Write the scheme report JSON here.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Export {
    /// `i,j,angle` CSV of every pair.
    Angles {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// `i,j,re,im` CSV of the Gram matrix.
    Gram {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Edge list of a certified antipodal cover.
    Cover {
        #[arg(long, conflicts_with = "rds", required_unless_present = "rds")]
        tank_trap: bool,
        /// Relative difference set JSON with N.
        #[arg(long)]
        rds: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// `u v multiplicity` edge list of a code's coset graph.
    CosetGraph {
        #[arg(long)]
        code: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Malformed(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn from_lineset(e: LineSetError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// The resolved configuration shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tol: Option<f64>,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    /// Tolerance for constructed sets.
    pub fn build_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    pub fn header(&self, subcommand: &str, mut rest: Vec<(String, String)>, file_input: bool) -> Vec<(String, String)> {
        let mut out = vec![("subcommand".to_string(), subcommand.to_string())];
        out.append(&mut rest);
        let tol = match (self.tol, file_input) {
            (Some(t), _) => format!("{t:e}"),
            (None, true) => "from input file".to_string(),
            (None, false) => format!("{:e}", DEFAULT_TOL),
        };
        out.push(("tol".into(), tol));
        out.push(("format".into(), self.format.name().into()));
        out.push(("seed".into(), self.seed.to_string()));
        out
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("usage: invalid tolerance {t}\n") };
        }
    }
    let cfg = RunConfig { tol: cli.tol, format: cli.format, seed: cli.seed };
    match commands::dispatch(&cfg, &cli.command) {
        Ok(report) => {
            let code = if report.passed() { EXIT_PASS } else { EXIT_CERTIFICATION };
            Outcome { code, stdout: report.render(cfg.format), stderr: String::new() }
        }
        Err(e) => Outcome { code: e.code(), stdout: String::new(), stderr: format!("linecert: {e}\n") },
    }
}

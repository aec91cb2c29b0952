//! Command-line front end: single evaluations, method cross-checks, sweeps,
//! the self-consistency test and the reference tables.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 convergence failure,
//! 3 self-test failure.

mod commands;
mod output;
mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{
    evaluate, run_selftest, table2_rows, Evaluation, SelftestSummary, SELFTEST_THRESHOLD,
    TABLE1_POINTS, TABLE2_ORDERS,
};
pub use output::Format;
pub use sweep::{AxisSpec, SweepConfig};

use crate::nuttall::{DEFAULT_MAX_TERMS, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONVERGENCE: i32 = 2;
pub const EXIT_SELFTEST: i32 = 3;

/// Evaluation route for `Q_{η,μ}(x,y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Ladder,
    Homogeneous,
    Quadrature,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Ladder => "ladder",
            Method::Homogeneous => "homogeneous",
            Method::Quadrature => "quadrature",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nuttall", version, about = "Moments of the partial non-central chi-squared distribution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate Q_{eta,mu}(x,y) at one point
    Eval(EvalArgs),
    /// Regenerate a reference table (1: moment values, 2: recurrence errors)
    Table(TableArgs),
    /// Evaluate a grid of points with one or more methods
    Sweep(SweepArgs),
    /// Check the mu-recurrence identity on a grid of series values
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, Args)]
struct Controls {
    /// Relative tolerance of the series, in [1e-15, 1e-6]
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Cap on the series index
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    eta: f64,
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, allow_hyphen_values = true)]
    y: f64,
    #[arg(long, value_enum, default_value_t = Method::Series)]
    method: Method,
    #[command(flatten)]
    controls: Controls,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Table number
    #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
    which: u8,
    #[command(flatten)]
    controls: Controls,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Axis as `v`, `lo:hi` or `lo:hi:steps`
    #[arg(long, default_value = "1:50")]
    eta: AxisSpec,
    #[arg(long, default_value = "1:50")]
    mu: AxisSpec,
    #[arg(long, default_value = "0.1:20")]
    x: AxisSpec,
    #[arg(long, default_value = "0.1:20")]
    y: AxisSpec,
    /// Points per axis for axes given as `lo:hi`
    #[arg(long, default_value_t = 5)]
    steps: usize,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Comma-separated methods
    #[arg(long, value_enum, value_delimiter = ',', default_value = "series")]
    method: Vec<Method>,
    #[command(flatten)]
    controls: Controls,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Largest accepted deviation
    #[arg(long, default_value_t = commands::SELFTEST_THRESHOLD)]
    threshold: f64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match cli.command {
        Command::Eval(a) => commands::eval(&a, out, err),
        Command::Table(a) => commands::table(&a, out, err),
        Command::Sweep(a) => commands::sweep(&a, out, err),
        Command::Selftest(a) => commands::selftest(&a, out, err),
    }
}

//! Command-line front end for `hermdecay`.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 failed verification,
//! 3 I/O error.

pub mod commands;
pub mod plot;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use hermdecay::{extremal_function, ComplexGaussian, GaussianEnvelopePair, TestFunction};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<hermdecay::Error> for CliError {
    fn from(e: hermdecay::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "hermdecay", version, about = "Hermite-coefficient decay of Gaussian-dominated functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print mu, nu, A, tau, theta0, theta1 and the identity residuals.
    Constants(ConstantsArgs),
    /// Coefficient table with the decay envelope.
    Coeffs(CoeffsArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Render a coefficient or ray CSV as SVG.
    Plot(PlotArgs),
    /// |Bf| along a ray against the applicable growth bound.
    BargmannRay(RayArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
}

impl PairArgs {
    pub fn pair(&self) -> CliResult<GaussianEnvelopePair> {
        Ok(GaussianEnvelopePair::new(self.a, self.b)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Quadrature,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// extremal, gauss:<c> or hermite:<k>
    #[arg(long, default_value = "extremal")]
    pub function: String,
    #[arg(long, default_value_t = 200)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    /// Gauss-Hermite order for the quadrature method [default: 2*n_max+64]
    #[arg(long)]
    pub quad_order: Option<usize>,
    /// Allow a quadrature order below 2*n_max+64.
    #[arg(long)]
    pub allow_low_order: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma21,
    Symmetry,
    Coeffs,
    Bargmann,
    Jnk,
    Decay,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Restrict pair-specific checks to this pair (requires --b).
    #[arg(long, requires = "b", allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, requires = "a", allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Identity residual tolerance.
    #[arg(long, default_value_t = hermdecay::constants::DEFAULT_RESIDUAL_TOL)]
    pub residual_tol: f64,
    /// Also write the report to this file.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct RayArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value = "extremal")]
    pub function: String,
    /// Angle in radians, or one of peak, theta0, theta1
    #[arg(long, allow_negative_numbers = true)]
    pub theta: String,
    /// Largest radius [default: sqrt(120/A), i.e. r^2 A/4 = 30]
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionSelector {
    Extremal,
    Gauss(f64),
    Hermite(usize),
}

impl FromStr for FunctionSelector {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Input(format!("unknown function selector '{s}' (use extremal, gauss:<c>, hermite:<k>)"));
        if s == "extremal" {
            return Ok(FunctionSelector::Extremal);
        }
        match s.split_once(':') {
            Some(("gauss", c)) => {
                let c: f64 = c.parse().map_err(|_| bad())?;
                if !(c > 0.0 && c.is_finite()) {
                    return Err(CliError::Input(format!("gauss:<c> needs c > 0, got {c}")));
                }
                Ok(FunctionSelector::Gauss(c))
            }
            Some(("hermite", k)) => Ok(FunctionSelector::Hermite(k.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

impl FunctionSelector {
    pub fn build(&self, pair: &GaussianEnvelopePair) -> CliResult<TestFunction> {
        Ok(match *self {
            FunctionSelector::Extremal => TestFunction::Gaussian(extremal_function(pair)?),
            FunctionSelector::Gauss(c) => TestFunction::Gaussian(ComplexGaussian::real(c)?),
            FunctionSelector::Hermite(k) => TestFunction::Expansion(hermdecay::CoefficientSequence::unit(
                hermdecay::CoefficientKind::HermiteInnerProduct,
                k,
                k,
            )),
        })
    }
}

/// Writes to the file, or to stdout when no path is given.
pub fn emit(output: Option<&Path>, content: &str) -> CliResult<()> {
    match output {
        Some(p) => std::fs::write(p, content).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// `{:.16e}` (17 significant digits), with `-inf` for log-zero.
pub fn fmt_num(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else if x == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Constants(args) => commands::cmd_constants(&args),
        Command::Coeffs(args) => commands::cmd_coeffs(&args),
        Command::Verify(args) => verify::cmd_verify(&args),
        Command::Plot(args) => plot::cmd_plot(&args),
        Command::BargmannRay(args) => commands::cmd_bargmann_ray(&args),
    }
}

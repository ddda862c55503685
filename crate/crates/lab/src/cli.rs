use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "fkpp",
    version,
    about = "FKPP fronts: simulations, speed measurements, eps sweeps and formula checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the closed-form results and print a JSON report (exit 3 on failure).
    Verify(VerifyArgs),
    /// Run the explicit solver and write the trajectory CSV plus metadata JSON.
    Simulate(SimArgs),
    /// Simulate and fit the front speed.
    FrontSpeed(FrontSpeedArgs),
    /// Front error and residual trends of G = -eps ln rho along decreasing eps.
    SweepEpsilon(SweepArgs),
    /// Tabulate the closed-form actions on an (x, t) grid.
    Actions(ActionsArgs),
    /// Audit the kink's printed action against G2 and the leading-edge asymptotics.
    CompareGaz(GazArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IcKind {
    /// Heaviside step at x0.
    Step,
    /// exp(-lambda (x - x0)) capped at 1.
    ExpTail,
    /// The exact traveling kink centred at x0.
    Az,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Seed for the random parameter draws.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SimArgs {
    #[arg(long, value_enum)]
    pub ic: Option<IcKind>,
    /// Solve rho_t = rho_xx + rho(1 - rho) in (x~, t~); D, U and eps are fixed to 1.
    #[arg(long)]
    pub dimensionless: bool,
    #[arg(long = "D")]
    pub d: Option<f64>,
    #[arg(long = "U")]
    pub u: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub dx: Option<f64>,
    /// Position of the initial front.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    /// Decay rate of the exp-tail IC [default: sqrt(2/3) in dimensionless units].
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub output_every: Option<f64>,
    /// Fraction of the stability limit used as time step.
    #[arg(long)]
    pub safety: Option<f64>,
    /// Recorded in the metadata.
    #[arg(long)]
    pub seed: Option<u64>,
    /// TOML file with the same keys (underscored); flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FrontSpeedArgs {
    #[command(flatten)]
    pub sim: SimArgs,
    /// rho level tracked as the front.
    #[arg(long)]
    pub level: Option<f64>,
    /// Fraction of the final samples used for the fit.
    #[arg(long)]
    pub fit_window: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Strictly decreasing list, e.g. 0.4,0.2,0.1.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub eps: Vec<f64>,
    #[arg(long = "D", default_value_t = 1.0)]
    pub d: f64,
    #[arg(long = "U", default_value_t = 1.0)]
    pub u: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_star: f64,
    /// Grid resolution, dx = eps / cells_per_eps.
    #[arg(long, default_value_t = 20.0)]
    pub cells_per_eps: f64,
    #[arg(long, default_value = "fkpp-out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    G1,
    G2,
    G3,
    Gaz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
pub struct ActionsArgs {
    #[arg(long, value_enum, value_delimiter = ',', required = true, num_args = 1..)]
    pub variant: Vec<Variant>,
    #[arg(long = "D", default_value_t = 1.0)]
    pub d: f64,
    #[arg(long = "U", default_value_t = 1.0)]
    pub u: f64,
    /// Required for g2; must exceed U.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Required for g3; must be at least 2 sqrt(DU).
    #[arg(long)]
    pub v: Option<f64>,
    #[arg(long, value_enum, default_value = "plus")]
    pub branch: BranchArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 41)]
    pub nx: usize,
    /// Times to tabulate.
    #[arg(long, value_delimiter = ',', default_value = "1", num_args = 1..)]
    pub t: Vec<f64>,
    #[arg(long, default_value = "fkpp-out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct GazArgs {
    #[arg(long = "D", default_value_t = 1.0)]
    pub d: f64,
    #[arg(long = "U", default_value_t = 1.0)]
    pub u: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

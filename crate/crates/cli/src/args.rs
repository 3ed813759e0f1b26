use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "landspec",
    version,
    about = "Balanced growth, dynamics and comparative statics for a growth model with land and collateral constraints"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the balanced growth path and check assumptions.
    Solve(SolveArgs),
    /// Sign map of d(1+g*)/d<param> over a grid of land productivity.
    Sweep(SweepArgs),
    /// Simulate a path: jump, explicit start, temporary shock or unbalanced growth.
    Simulate(SimulateArgs),
    /// Check assumptions and every sign claim; exit 4 if any fails.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EconomyArg {
    Open,
    Monetary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WrtArg {
    Theta,
    ThetaX,
    R,
    Mu,
    Epsilon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BeliefArg {
    BelievedPermanent,
    AnticipatedTemporary,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Scenario file (`key = value` lines).
    #[arg(long)]
    pub scenario: PathBuf,
    /// Output directory; LANDSPEC_OUTDIR takes precedence.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: Common,
    /// Economy to solve; inferred when the scenario sets only one rate.
    #[arg(long, value_enum)]
    pub economy: Option<EconomyArg>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub economy: Option<EconomyArg>,
    /// Parameter to differentiate with respect to.
    #[arg(long, value_enum)]
    pub wrt: WrtArg,
    #[arg(long, default_value_t = 0.0)]
    pub eps_from: f64,
    /// Defaults to min(0.99·upper bound of epsilon, 1).
    #[arg(long)]
    pub eps_to: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    /// Worker threads; output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub economy: Option<EconomyArg>,
    #[arg(long, default_value_t = 50)]
    pub periods: usize,
    #[arg(long, default_value_t = 1.0)]
    pub k0: f64,
    /// Start φ here instead of jumping onto the balanced path.
    #[arg(long)]
    pub phi0: Option<f64>,
    /// Land productivity during a one-period shock.
    #[arg(long)]
    pub shock_eps: Option<f64>,
    /// Shock date.
    #[arg(long)]
    pub shock_at: Option<usize>,
    #[arg(long, value_enum, default_value = "believed-permanent")]
    pub belief: BeliefArg,
    /// Rent growth rate; switches to the unbalanced-growth path.
    #[arg(long)]
    pub d: Option<f64>,
    /// Initial dividend share for the unbalanced path.
    #[arg(long, default_value_t = 0.01)]
    pub n0: f64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,
    /// Restrict to one economy; by default every economy whose rate is set.
    #[arg(long, value_enum)]
    pub economy: Option<EconomyArg>,
}

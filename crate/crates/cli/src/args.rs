//! Command-line flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "stlc-oracle", version, about = "Quadratic drift obstructions of control-affine systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the obstruction check over a grid of (k, m) parameters.
    Check(CheckArgs),
    /// List Hall basis members, optionally with their values at the origin.
    Brackets(BracketsArgs),
    /// Integrate a system under a control file.
    Simulate(SimulateArgs),
    /// Evaluate a coordinate of the second kind.
    Xi(XiArgs),
}

#[derive(Args, Debug)]
pub struct SystemInput {
    /// System file.
    pub file: PathBuf,
    /// Override a declared parameter, e.g. `--param alpha=2`.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: SystemInput,
    /// Inclusive range `a..b`, or a single value.
    #[arg(long, default_value = "1..2")]
    pub k_range: String,
    #[arg(long, default_value = "1..2")]
    pub m_range: String,
    /// Asymmetric checks over (k, k', m, m').
    #[arg(long)]
    pub asym: bool,
    #[arg(long, requires = "asym")]
    pub kprime_range: Option<String>,
    #[arg(long, requires = "asym")]
    pub mprime_range: Option<String>,
    /// Longest bracket considered; defaults to `2 k_max + 2`.
    #[arg(long)]
    pub length_cap: Option<usize>,
    /// Also run the quartic check (heuristic span choice).
    #[arg(long)]
    pub quartic: bool,
    /// Also run the S(theta) check on `W^1_k` for each k.
    #[arg(long, value_name = "THETA")]
    pub sussmann: Option<String>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Record wall-clock timings in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct BracketsArgs {
    #[command(flatten)]
    pub input: SystemInput,
    #[arg(long, default_value_t = 4)]
    pub max_length: usize,
    /// Print `f_b(0)` for every member.
    #[arg(long)]
    pub eval_at_zero: bool,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: SystemInput,
    /// Control file.
    #[arg(long)]
    pub controls: PathBuf,
    /// End time; defaults to the control horizon.
    #[arg(long)]
    pub t: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Write `t,x1,...,xd` rows of the trajectory here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Compare with the exact state when the system has a registered formula.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct XiArgs {
    /// Control file.
    pub file: PathBuf,
    /// A bracket such as `(X1,(X1,X0))`, or a family such as `W1 j=1 l=0`.
    #[arg(long)]
    pub bracket: String,
    /// Evaluation time; defaults to the horizon.
    #[arg(long)]
    pub t: Option<String>,
}

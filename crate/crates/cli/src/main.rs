#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

mod commands;
mod io;

#[derive(Parser)]
#[command(name = "lipext", version, about = "Lipschitz extension of sampled functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the Lipschitz constant of a sample.
    Fit(FitArgs),
    /// Evaluate the lower and upper extensions at query points.
    Extend(ExtendArgs),
    /// Approximate extension from a subspace of a normed space.
    ApproxExtend(ApproxArgs),
    /// Lipschitz envelopes of a uniformly continuous function.
    Density(DensityArgs),
    /// Run the property suite.
    Check(CheckArgs),
}

#[derive(Args)]
pub struct FitArgs {
    /// CSV with columns x1..xd,g.
    pub samples: PathBuf,
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
}

#[derive(Args)]
#[command(group(ArgGroup::new("constant").required(true).args(["sigma", "modulus"])))]
pub struct ExtendArgs {
    /// CSV with columns x1..xd,g.
    pub samples: PathBuf,
    /// CSV with columns x1..xd.
    pub queries: PathBuf,
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// linear:S, hoelder:S:A or pwl:t,v;t,v;...
    #[arg(long)]
    pub modulus: Option<String>,
    /// lower, upper, midpoint or both.
    #[arg(long, default_value = "lower")]
    pub side: String,
    #[arg(long, env = "LIPEXT_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ApproxArgs {
    /// JSON: {dimension, norm, basis, g: {"linear": [...]} | {"samples": "file.csv"}, sigma}.
    pub problem: PathBuf,
    /// CSV with columns x1..xn.
    pub queries: PathBuf,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value_t = lipext_core::normed::DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, env = "LIPEXT_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["function", "samples"])))]
pub struct DensityArgs {
    /// sqrt, abs, sin, const:C or poly:c0,c1,...
    #[arg(long)]
    pub function: Option<String>,
    /// CSV with columns x1..xd,g; needs --omega and --bound.
    #[arg(long, requires_all = ["omega", "bound"])]
    pub samples: Option<PathBuf>,
    /// Modulus of uniform continuity power:C:P, meaning omega(eps) = C eps^P.
    #[arg(long)]
    pub omega: Option<String>,
    /// Bound M on |f|.
    #[arg(long)]
    pub bound: Option<f64>,
    #[arg(long, default_value = "0,1")]
    pub interval: String,
    #[arg(long, default_value_t = 201)]
    pub n: usize,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
    #[arg(long, env = "LIPEXT_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Approximants CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary JSON; stderr when absent.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// default or quick.
    #[arg(long, default_value = "default")]
    pub profile: String,
    /// Replaces every check's tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        Self { code: 2, message }
    }

    pub fn io(message: String) -> Self {
        Self { code: 2, message }
    }

    pub fn checks_failed(message: String) -> Self {
        Self { code: 1, message }
    }
}

impl From<lipext_core::Error> for CliError {
    fn from(e: lipext_core::Error) -> Self {
        use lipext_core::Error as E;
        let code = match &e {
            E::Conflict(_) => 3,
            E::SigmaTooSmall { .. } | E::ModulusViolated { .. } => 4,
            E::BoundViolated { .. } => 5,
            E::DegenerateBasis(_) | E::NoDistinctPairs | E::ZeroDistance(..) => 6,
            _ => 2,
        };
        let message = match e {
            E::NoDistinctPairs => "need ≥ 2 distinct points".to_string(),
            other => other.to_string(),
        };
        Self { code, message }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fit(a) => commands::fit(&a),
        Command::Extend(a) => commands::extend(&a),
        Command::ApproxExtend(a) => commands::approx_extend(&a),
        Command::Density(a) => commands::density(&a),
        Command::Check(a) => commands::check(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lipext: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

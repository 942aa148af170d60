//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{FileConfig, Format, JobConfig, Method, Overrides};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "starkres", version, about = "Stark resonances of hydrogen in high precision")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Riccati-Pade resonance from a tracked scan over Hankel dimensions.
    Rpm(JobArgs),
    /// Perturbation series in the field strength.
    Pt(JobArgs),
    /// Complex-rotated Laguerre-mesh resonance.
    Crlm(JobArgs),
    /// Ground-state width from the asymptotic formula.
    Asymptotic(JobArgs),
    /// All engines side by side with reference values and verdicts.
    Compare(JobArgs),
    /// Riccati-Pade convergence trace as CSV.
    Converge(JobArgs),
    /// Whatever method the configuration file names.
    Run(JobArgs),
}

#[derive(Debug, Default, Args)]
pub struct JobArgs {
    /// TOML job file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Field strength in atomic units.
    #[arg(long = "F", short = 'F', value_name = "F", allow_hyphen_values = true)]
    pub field: Option<String>,
    /// Parabolic state as a ket "n q m".
    #[arg(long, allow_hyphen_values = true)]
    pub state: Option<String>,
    /// Working precision in decimal digits.
    #[arg(long)]
    pub digits: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Compare against the reference catalog; exit 4 on mismatch.
    #[arg(long)]
    pub check: bool,
    /// Number of perturbation terms (orders 0..K-1).
    #[arg(long)]
    pub orders: Option<usize>,
    /// Smallest Hankel dimension of the scan.
    #[arg(long)]
    pub d_min: Option<usize>,
    /// Largest Hankel dimension of the scan.
    #[arg(long)]
    pub d_max: Option<usize>,
    /// Hankel displacement d.
    #[arg(long = "disp", short = 'd')]
    pub disp: Option<usize>,
    /// Mesh size for excited-state Riccati-Pade seeds.
    #[arg(long)]
    pub seed_mesh: Option<usize>,
    /// Mesh size N.
    #[arg(long = "N", short = 'N', value_name = "N")]
    pub mesh: Option<usize>,
    /// Rotation angles, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub theta: Option<Vec<f64>>,
    #[arg(long)]
    pub quad_order: Option<usize>,
    #[arg(long)]
    pub assembly_digits: Option<u32>,
    /// Round mesh matrix entries to this many significant digits.
    #[arg(long)]
    pub degrade: Option<u32>,
    /// Also write the convergence trace CSV here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

impl Command {
    pub fn split(self) -> (Option<Method>, JobArgs) {
        match self {
            Command::Rpm(a) => (Some(Method::Rpm), a),
            Command::Pt(a) => (Some(Method::Pt), a),
            Command::Crlm(a) => (Some(Method::Crlm), a),
            Command::Asymptotic(a) => (Some(Method::Asymptotic), a),
            Command::Compare(a) => (Some(Method::Compare), a),
            Command::Converge(a) => (Some(Method::Converge), a),
            Command::Run(a) => (None, a),
        }
    }
}

/// Builds the validated job for a parsed command line.
pub fn job_from(command: Command) -> Result<JobConfig, CliError> {
    let (method, a) = command.split();
    let file = match &a.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = Overrides {
        method,
        field: a.field,
        state: a.state,
        digits: a.digits,
        d_min: a.d_min,
        d_max: a.d_max,
        disp: a.disp,
        seed_mesh: a.seed_mesh,
        orders: a.orders,
        mesh: a.mesh,
        theta: a.theta,
        quad_order: a.quad_order,
        assembly_digits: a.assembly_digits,
        degrade: a.degrade,
        out: a.out,
        format: a.format,
        check: a.check,
        trace: a.trace,
    };
    JobConfig::resolve(file, flags)
}

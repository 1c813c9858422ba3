use cubelab_lab::{run_experiment, ExperimentSpec, Instance, LabOptions, Target};

use crate::config::Config;
use crate::error::CliError;
use crate::input;
use crate::output::Rendered;

#[derive(clap::Subcommand, Debug)]
pub enum LabCmd {
    /// Sweep one target's measured quantity and fit the scaling exponent.
    Run(RunArgs),
}

#[derive(clap::Args, Debug)]
pub struct RunArgs {
    /// Target tag: lemma24, thm11, thm12, eq14, lemma31, thm33, thm13, lemma55.
    pub target: String,
    /// Shape n,r,t,omega (auxiliary mean-value target).
    #[arg(long)]
    pub shape: Option<String>,
    /// Coefficient matrix: file path or inline rows.
    #[arg(long)]
    pub matrix: Option<String>,
    /// One shift per linear form.
    #[arg(long)]
    pub shifts: Option<String>,
    /// Number of smooth-restricted cube pairs.
    #[arg(long)]
    pub l: Option<u8>,
    /// Exceptional-set exponent.
    #[arg(long)]
    pub theta: Option<String>,
    /// Sweep 2..=P.
    #[arg(long, conflicts_with = "sweep")]
    pub pmax: Option<u64>,
    /// Explicit comma-separated sweep points.
    #[arg(long)]
    pub sweep: Option<String>,
    /// Slope and constant-growth tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

pub fn run_lab(cmd: &LabCmd, config: &Config) -> Result<Rendered, CliError> {
    let LabCmd::Run(args) = cmd;
    let target = Target::parse(&args.target)
        .ok_or_else(|| CliError::Usage(format!("unknown target {:?}", args.target)))?;
    let mut instance = Instance::default_for(target);
    instance.eta = config.eta;
    instance.sigma = config.sigma;
    if let Some(spec) = &args.shape {
        instance.shape = Some(input::shape_arg(spec)?);
    }
    if let Some(spec) = &args.matrix {
        instance.matrix = Some(input::matrix_arg(spec)?);
    }
    if let Some(spec) = &args.shifts {
        instance.shifts = Some(input::int_list(spec)?);
    }
    if let Some(l) = args.l {
        instance.l = l;
    }
    if let Some(spec) = &args.theta {
        instance.theta = input::frac_arg(spec, "theta")?;
    }
    let sweep = match (&args.sweep, args.pmax) {
        (Some(spec), _) => input::u64_list(spec)?,
        (None, Some(pmax)) => (2..=pmax).collect(),
        (None, None) => default_sweep(target),
    };
    let mut spec = ExperimentSpec::new(target, instance, sweep)?;
    if let Some(tol) = args.tolerance {
        spec = spec.with_tolerance(tol);
    }
    let opts = LabOptions { budget: config.budget, partitions: config.partitions() };
    let report = run_experiment(&spec, &opts)?;
    Ok(Rendered { json: report.to_json(), csv: report.to_csv() })
}

/// Stock sweeps sized so every target finishes in seconds at the default
/// budget.
fn default_sweep(target: Target) -> Vec<u64> {
    match target {
        Target::Lemma24 => vec![2, 3, 4, 5, 6],
        Target::Thm11 | Target::Thm12 => vec![1_000, 10_000, 100_000],
        Target::Eq14 => vec![10_000, 100_000, 1_000_000],
        Target::Lemma31 => vec![8, 16, 32],
        Target::Thm33 => vec![4, 6, 8],
        Target::Thm13 => vec![10, 100, 1_000, 10_000],
        Target::Lemma55 => vec![10_000, 100_000, 1_000_000],
    }
}

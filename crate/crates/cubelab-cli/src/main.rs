//! Command-line front end: exact counts, structured matrix transforms,
//! circle-method evaluations, and exponent experiments behind one binary.
//! Output is JSON by default (CSV via --format csv) and identical
//! invocations are bit-identical across runs and thread counts.

mod blocks;
mod config;
mod error;
mod input;
mod output;
mod sweeps;
mod tables;
mod torus;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{Config, Format};
use error::CliError;
use output::Rendered;

#[derive(Parser, Debug)]
#[command(name = "cubelab", version, about = "Cube-system counts and circle-method experiments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Directory for representation-count table caches.
    #[arg(long, global = true, env = "CUBELAB_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Enumeration budget guard.
    #[arg(long, global = true, default_value_t = 1e10)]
    budget: f64,
    /// Smoothness exponent, in (0, 1].
    #[arg(long, global = true, default_value = "1/2")]
    eta: String,
    /// Window lower edge, in [0, 1).
    #[arg(long, global = true, default_value = "0")]
    sigma: String,
    /// Default moment power offset.
    #[arg(long, global = true, default_value = "1/2")]
    delta: String,
    /// Worker threads and engine partitions; 0 keeps the defaults.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the randomized membership sampler.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock millis in count payloads.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Representation counts rho(n): single queries or whole tables.
    Rho(tables::RhoArgs),
    /// Correlation sum over the positive cone of a coefficient matrix.
    Xi(tables::XiArgs),
    /// Exact enumeration counts.
    #[command(subcommand)]
    Count(tables::CountCmd),
    /// Structured matrix checks and constructions.
    #[command(subcommand)]
    Matrix(blocks::MatrixCmd),
    /// Circle-method evaluations on the unit torus.
    #[command(subcommand)]
    Circle(torus::CircleCmd),
    /// Exponent experiments.
    #[command(subcommand)]
    Lab(sweeps::LabCmd),
}

fn build_config(global: &Global) -> Result<Config, CliError> {
    let config = Config {
        cache_dir: global.cache_dir.clone(),
        budget: global.budget,
        eta: input::frac_arg(&global.eta, "eta")?,
        sigma: input::frac_arg(&global.sigma, "sigma")?,
        delta: input::frac_arg(&global.delta, "delta")?,
        threads: global.threads,
        format: global.format,
        seed: global.seed,
        timing: global.timing,
    };
    config.validate()?;
    Ok(config)
}

fn dispatch(cmd: &Cmd, config: &Config) -> Result<Rendered, CliError> {
    match cmd {
        Cmd::Rho(args) => tables::run_rho(args, config),
        Cmd::Xi(args) => tables::run_xi(args, config),
        Cmd::Count(which) => tables::run_count(which, config),
        Cmd::Matrix(which) => blocks::run_matrix(which),
        Cmd::Circle(which) => torus::run_circle(which, config),
        Cmd::Lab(which) => sweeps::run_lab(which, config),
    }
}

fn main() {
    let cli = Cli::parse();
    let config = match build_config(&cli.global) {
        Ok(config) => config,
        Err(e) => fail(e),
    };
    if config.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global()
            .ok();
    }
    match dispatch(&cli.cmd, &config) {
        Ok(rendered) => rendered.print(&config),
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ! {
    eprintln!("error: {e}");
    std::process::exit(e.code());
}

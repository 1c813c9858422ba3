use std::time::Instant;

use cubelab_cubes::{load_or_build, RhoTable, RhoVariant};
use cubelab_dioph::{count_i_omega, count_system, count_upsilon, count_xi};
use cubelab_dioph::{EngineOptions, SystemVariant, XiOptions};
use cubelab_lab::canonical_auxiliary;
use cubelab_matrix::{validate_auxiliary, AuxShape};
use serde_json::Value;

use crate::config::Config;
use crate::error::CliError;
use crate::input;
use crate::output::{count_payload, Rendered};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantArg {
    Plain,
    Smooth,
    Window,
}

#[derive(clap::Args, Debug)]
pub struct RhoArgs {
    /// Single query point n.
    #[arg(long)]
    pub n: Option<u64>,
    /// Table limit; defaults to n. Without --n the whole table is emitted.
    #[arg(long)]
    pub limit: Option<u64>,
    #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
    pub variant: VariantArg,
    /// Window scale P; required by the window variant.
    #[arg(long)]
    pub p: Option<u64>,
}

pub fn run_rho(args: &RhoArgs, config: &Config) -> Result<Rendered, CliError> {
    let limit = args
        .limit
        .or(args.n)
        .ok_or_else(|| CliError::Usage("rho needs --n or --limit".into()))?;
    if let Some(n) = args.n {
        if n > limit {
            return Err(CliError::Invalid(format!("query point {n} exceeds table limit {limit}")));
        }
    }
    let variant = match args.variant {
        VariantArg::Plain => RhoVariant::Plain,
        VariantArg::Smooth => RhoVariant::Smooth { eta: config.eta },
        VariantArg::Window => RhoVariant::Window {
            sigma: config.sigma,
            p: args.p.ok_or_else(|| CliError::Invalid("window variant needs --p".into()))?,
            eta: config.eta,
        },
    };
    let table = match &config.cache_dir {
        Some(dir) => load_or_build(dir, limit, variant, config.partitions())?.0,
        None => RhoTable::build_partitioned(limit, variant, config.partitions())?,
    };
    match args.n {
        Some(n) => {
            let count = table.get(n);
            Ok(Rendered { json: count.to_string(), csv: format!("n,count\n{n},{count}\n") })
        }
        None => {
            let entries: Vec<(u64, u32)> = (0..=limit)
                .filter_map(|n| {
                    let c = table.get(n);
                    (c > 0).then_some((n, c))
                })
                .collect();
            let rows: Vec<Value> =
                entries.iter().map(|&(n, c)| Value::Array(vec![n.into(), c.into()])).collect();
            let json = Value::Object(serde_json::Map::from_iter([
                ("limit".to_string(), Value::from(limit)),
                ("entries".to_string(), Value::Array(rows)),
            ]))
            .to_string();
            let mut csv = String::from("n,count\n");
            for (n, c) in entries {
                csv.push_str(&format!("{n},{c}\n"));
            }
            Ok(Rendered { json, csv })
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct XiArgs {
    /// Coefficient matrix: file path or inline rows like "1,0,1,1;0,1,1,2".
    #[arg(long)]
    pub matrix: String,
    /// One shift per linear form; zeros when omitted.
    #[arg(long)]
    pub shifts: Option<String>,
    /// Cone bound N.
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
    pub variant: VariantArg,
}

pub fn run_xi(args: &XiArgs, config: &Config) -> Result<Rendered, CliError> {
    let a = input::matrix_arg(&args.matrix)?;
    let h = match &args.shifts {
        Some(spec) => input::int_list(spec)?,
        None => vec![0; a.cols()],
    };
    let variant = match args.variant {
        VariantArg::Plain => RhoVariant::Plain,
        VariantArg::Smooth => RhoVariant::Smooth { eta: config.eta },
        VariantArg::Window => {
            return Err(CliError::Invalid(
                "correlation sums take plain or smooth weights; the window \
                 variant needs a P tied to the cone bound"
                    .into(),
            ))
        }
    };
    let opts = XiOptions { partitions: config.partitions(), ..XiOptions::default() };
    let start = Instant::now();
    let report = count_xi(&a, &h, args.n, variant, &opts)?;
    Ok(count_payload(&report, config, start.elapsed().as_millis()))
}

#[derive(clap::Subcommand, Debug)]
pub enum CountCmd {
    /// Solutions of C x^3 = h with every variable in (sigma P, P].
    System(SystemArgs),
    /// Mean value I_omega of an auxiliary matrix (canonical power blocks
    /// unless --matrix supplies the full matrix).
    Iomega(IomegaArgs),
    /// Tuples in the cone whose linear forms are all sums of three cubes.
    Upsilon(UpsilonArgs),
}

#[derive(clap::Args, Debug)]
pub struct SystemArgs {
    /// Coefficient matrix: file path or inline rows.
    #[arg(long)]
    pub matrix: String,
    /// One target per equation; zeros when omitted.
    #[arg(long)]
    pub h: Option<String>,
    /// Variable bound P.
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
    pub variant: VariantArg,
}

#[derive(clap::Args, Debug)]
pub struct IomegaArgs {
    /// Shape n,r,t,omega.
    #[arg(long)]
    pub shape: String,
    /// Full auxiliary matrix; validated against the shape.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Variable bound P.
    #[arg(long)]
    pub p: u64,
}

#[derive(clap::Args, Debug)]
pub struct UpsilonArgs {
    /// Coefficient matrix: file path or inline rows.
    #[arg(long)]
    pub matrix: String,
    /// Cone bound N.
    #[arg(long)]
    pub n: u64,
}

pub fn run_count(cmd: &CountCmd, config: &Config) -> Result<Rendered, CliError> {
    let opts = EngineOptions {
        budget: config.budget,
        partitions: config.partitions(),
        ..EngineOptions::default()
    };
    let start = Instant::now();
    let report = match cmd {
        CountCmd::System(args) => {
            let c = input::matrix_arg(&args.matrix)?;
            let h = match &args.h {
                Some(spec) => input::int_list(spec)?,
                None => vec![0; c.rows()],
            };
            let variant = match args.variant {
                VariantArg::Plain => SystemVariant::Plain,
                VariantArg::Smooth => SystemVariant::Smooth { eta: config.eta },
                VariantArg::Window => {
                    SystemVariant::Window { sigma: config.sigma, eta: config.eta }
                }
            };
            count_system(&c, &h, args.p, &variant, &opts)?
        }
        CountCmd::Iomega(args) => {
            let (n, r, t, omega) = input::shape_arg(&args.shape)?;
            let aux = match &args.matrix {
                Some(spec) => {
                    let m = input::matrix_arg(spec)?;
                    let shape = AuxShape::new(n, r, t, omega)?;
                    validate_auxiliary(&m, shape)?
                }
                None => canonical_auxiliary((n, r, t, omega))?,
            };
            count_i_omega(&aux, args.p, &opts)?
        }
        CountCmd::Upsilon(args) => {
            let c = input::matrix_arg(&args.matrix)?;
            count_upsilon(&c, args.n, &opts)?
        }
    };
    Ok(count_payload(&report, config, start.elapsed().as_millis()))
}

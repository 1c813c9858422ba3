use cubelab_matrix::{build_auxiliary, section4_reduction, AdjuvantMatrix, AuxShape};
use num_bigint::BigInt;
use serde_json::Value;

use crate::error::CliError;
use crate::input;
use crate::output::{matrix_csv, matrix_value, object_payload, Rendered};

#[derive(clap::Subcommand, Debug)]
pub enum MatrixCmd {
    /// Minor nonsingularity checks.
    Check(CheckArgs),
    /// Assemble an auxiliary matrix from diagonal scalars and blocks.
    Build(BuildArgs),
    /// Complify an adjuvant matrix: type (n,r) to type (2n,r).
    Complify(ComplifyArgs),
    /// Reduce a correlation instance to a square cube system.
    Reduce(ReduceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckProperty {
    /// Every square minor nonsingular.
    Minors,
    /// Every set of at most `rows` columns linearly independent.
    Hns,
}

#[derive(clap::Args, Debug)]
pub struct CheckArgs {
    /// Matrix: file path or inline rows like "1,0,1,1;0,1,1,2".
    #[arg(long)]
    pub matrix: String,
    #[arg(long, value_enum, default_value_t = CheckProperty::Minors)]
    pub property: CheckProperty,
}

#[derive(clap::Args, Debug)]
pub struct BuildArgs {
    /// Shape n,r,t,omega.
    #[arg(long)]
    pub aux: String,
    /// Diagonal scalar(s): one value for all blocks, or n+1 comma-separated.
    #[arg(long, default_value = "1")]
    pub lambda: String,
    /// Generating block, used for every position its format fits.
    #[arg(long)]
    pub block: String,
    /// Leading t x (t+omega) block when it differs from --block.
    #[arg(long)]
    pub block0: Option<String>,
}

#[derive(clap::Args, Debug)]
pub struct ComplifyArgs {
    /// Adjuvant matrix of type (n,r): file path or inline rows.
    #[arg(long)]
    pub matrix: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
}

#[derive(clap::Args, Debug)]
pub struct ReduceArgs {
    /// Highly non-singular r x 2r coefficient matrix.
    #[arg(long)]
    pub matrix: String,
    /// One shift per linear form; zeros when omitted.
    #[arg(long)]
    pub h: Option<String>,
}

pub fn run_matrix(cmd: &MatrixCmd) -> Result<Rendered, CliError> {
    match cmd {
        MatrixCmd::Check(args) => {
            let m = input::matrix_arg(&args.matrix)?;
            let (key, value) = match args.property {
                CheckProperty::Minors => {
                    ("all_minors_nonsingular", m.all_square_minors_nonsingular())
                }
                CheckProperty::Hns => ("highly_nonsingular", m.is_highly_nonsingular()?),
            };
            let obj =
                serde_json::Map::from_iter([(key.to_string(), Value::Bool(value))]);
            Ok(object_payload(obj))
        }
        MatrixCmd::Build(args) => {
            let (n, r, t, omega) = input::shape_arg(&args.aux)?;
            let shape = AuxShape::new(n, r, t, omega)?;
            let lambdas = broadcast_lambdas(&args.lambda, n + 1)?;
            let block = input::matrix_arg(&args.block)?;
            let mut blocks = vec![match &args.block0 {
                Some(spec) => input::matrix_arg(spec)?,
                None => block.clone(),
            }];
            blocks.extend(std::iter::repeat_with(|| block.clone()).take(n));
            let aux = build_auxiliary(shape, &lambdas, &blocks)?;
            let m = aux.matrix();
            let json = Value::Object(serde_json::Map::from_iter([
                ("rows".to_string(), Value::from(m.rows() as u64)),
                ("cols".to_string(), Value::from(m.cols() as u64)),
                ("entries".to_string(), matrix_value(m)),
            ]))
            .to_string();
            Ok(Rendered { json, csv: matrix_csv(m) })
        }
        MatrixCmd::Complify(args) => {
            let m = input::matrix_arg(&args.matrix)?;
            let adj = AdjuvantMatrix::search(&m, args.n, args.r)?;
            let out = adj.complify()?;
            let om = out.matrix();
            let json = Value::Object(serde_json::Map::from_iter([
                ("n".to_string(), Value::from(out.n() as u64)),
                ("r".to_string(), Value::from(out.r() as u64)),
                ("rows".to_string(), Value::from(om.rows() as u64)),
                ("cols".to_string(), Value::from(om.cols() as u64)),
                ("entries".to_string(), matrix_value(om)),
            ]))
            .to_string();
            Ok(Rendered { json, csv: matrix_csv(om) })
        }
        MatrixCmd::Reduce(args) => {
            let a = input::matrix_arg(&args.matrix)?;
            let h: Vec<BigInt> = match &args.h {
                Some(spec) => input::bigint_list(spec)?,
                None => vec![BigInt::from(0); a.cols()],
            };
            let red = section4_reduction(&a, &h)?;
            let shifts: Vec<Value> =
                red.h_out.iter().map(|v| Value::String(v.to_string())).collect();
            let json = Value::Object(serde_json::Map::from_iter([
                ("b".to_string(), matrix_value(&red.b)),
                ("lambda".to_string(), Value::String(red.lambda.to_string())),
                ("shifts".to_string(), Value::Array(shifts)),
            ]))
            .to_string();
            let mut csv = format!("lambda,{}\n", red.lambda);
            let hs: Vec<String> = red.h_out.iter().map(|v| v.to_string()).collect();
            csv.push_str(&format!("shifts,{}\n", hs.join(",")));
            for line in matrix_csv(&red.b).lines() {
                csv.push_str(&format!("b,{line}\n"));
            }
            Ok(Rendered { json, csv })
        }
    }
}

fn broadcast_lambdas(spec: &str, want: usize) -> Result<Vec<BigInt>, CliError> {
    let mut lambdas = input::bigint_list(spec)?;
    if lambdas.len() == 1 && want > 1 {
        lambdas = vec![lambdas[0].clone(); want];
    }
    if lambdas.len() != want {
        return Err(CliError::Invalid(format!(
            "need {want} diagonal scalars, got {}",
            lambdas.len()
        )));
    }
    Ok(lambdas)
}

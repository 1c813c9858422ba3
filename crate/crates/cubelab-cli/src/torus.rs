use cubelab_circle::{
    arc_moment, gauss_sum, major_arc_prediction, singular_integral, singular_series, v_integral,
    weyl_sum, ArcDissection, MomentRegion, PredictVariant, WeylSumSpec,
};
use cubelab_cubes::frac_to_f64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::config::Config;
use crate::error::CliError;
use crate::input;
use crate::output::{estimate_payload, object_payload, Rendered};

#[derive(clap::Subcommand, Debug)]
pub enum CircleCmd {
    /// Cubic Weyl sum at a point of the torus.
    Weyl(WeylArgs),
    /// Complete cubic Gauss sum S(q, a).
    Gauss(GaussArgs),
    /// Oscillatory integral v(beta) over the window (sigma P, P).
    V(VArgs),
    /// Truncated singular series of a coefficient matrix.
    Series(SeriesArgs),
    /// Truncated singular integral over the scaled box.
    Integral(IntegralArgs),
    /// Major-arc main-term prediction for a cube system.
    Predict(PredictArgs),
    /// Arc dissections: enumeration, membership, random membership samples.
    Arcs(ArcsArgs),
    /// Moment of |f| over an arc region; power defaults to 2 + delta.
    Moment(MomentArgs),
}

#[derive(clap::Args, Debug)]
pub struct WeylArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub p: u64,
    /// Integer phase coefficient.
    #[arg(long, default_value_t = 1)]
    pub c: i64,
    /// Restrict to P^eta-smooth x.
    #[arg(long)]
    pub smooth: bool,
}

#[derive(clap::Args, Debug)]
pub struct GaussArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub a: i64,
}

#[derive(clap::Args, Debug)]
pub struct VArgs {
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub p: u64,
}

#[derive(clap::Args, Debug)]
pub struct SeriesArgs {
    /// Coefficient matrix: file path or inline rows.
    #[arg(long)]
    pub matrix: String,
    /// Series cutoff Q.
    #[arg(long, default_value_t = 64)]
    pub qmax: u64,
}

#[derive(clap::Args, Debug)]
pub struct IntegralArgs {
    /// Coefficient matrix: file path or inline rows.
    #[arg(long)]
    pub matrix: String,
    /// Box scale X.
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub p: u64,
}

#[derive(clap::Args, Debug)]
pub struct PredictArgs {
    /// Coefficient matrix: file path or inline rows.
    #[arg(long)]
    pub matrix: String,
    #[arg(long)]
    pub p: u64,
    /// Model the smooth-restricted count instead of the plain one.
    #[arg(long)]
    pub smooth: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyArg {
    Wide,
    Narrow,
    Box,
}

#[derive(clap::Args, Debug)]
pub struct ArcsArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Wide)]
    pub family: FamilyArg,
    /// Box dimension r.
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Membership query: one coordinate, or r comma-separated for boxes.
    #[arg(long, conflicts_with = "sample")]
    pub alpha: Option<String>,
    /// Classify this many seeded random points instead.
    #[arg(long)]
    pub sample: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RegionArg {
    Full,
    Major,
    MajorMinusNarrow,
    Minor,
}

#[derive(clap::Args, Debug)]
pub struct MomentArgs {
    /// Integer phase coefficient.
    #[arg(long, default_value_t = 1)]
    pub c: i64,
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value_t = RegionArg::Full)]
    pub region: RegionArg,
    /// Moment power; defaults to 2 + delta.
    #[arg(long)]
    pub power: Option<f64>,
}

pub fn run_circle(cmd: &CircleCmd, config: &Config) -> Result<Rendered, CliError> {
    match cmd {
        CircleCmd::Weyl(args) => {
            let eta = args.smooth.then_some(config.eta);
            let spec = WeylSumSpec::new(args.p, config.sigma, eta, args.c)?;
            let z = weyl_sum(&spec, args.alpha)?;
            Ok(object_payload(serde_json::Map::from_iter([
                ("re".to_string(), Value::from(z.re)),
                ("im".to_string(), Value::from(z.im)),
                ("abs".to_string(), Value::from(z.norm())),
            ])))
        }
        CircleCmd::Gauss(args) => {
            if args.q == 0 {
                return Err(CliError::Invalid("gauss sum needs q >= 1".into()));
            }
            let z = gauss_sum(args.q, args.a);
            Ok(object_payload(serde_json::Map::from_iter([
                ("q".to_string(), Value::from(args.q)),
                ("a".to_string(), Value::from(args.a)),
                ("re".to_string(), Value::from(z.re)),
                ("im".to_string(), Value::from(z.im)),
                ("abs".to_string(), Value::from(z.norm())),
            ])))
        }
        CircleCmd::V(args) => {
            let v = v_integral(args.beta, args.p, config.sigma)?;
            Ok(object_payload(serde_json::Map::from_iter([
                ("re".to_string(), Value::from(v.value.re)),
                ("im".to_string(), Value::from(v.value.im)),
                ("abs".to_string(), Value::from(v.value.norm())),
                ("est_error".to_string(), Value::from(v.est_error)),
                ("nodes".to_string(), Value::from(v.nodes)),
                ("converged".to_string(), Value::Bool(v.converged)),
            ])))
        }
        CircleCmd::Series(args) => {
            let c = input::matrix_arg(&args.matrix)?;
            let est = singular_series(args.qmax, &c, config.budget)?;
            Ok(estimate_payload(&est))
        }
        CircleCmd::Integral(args) => {
            let c = input::matrix_arg(&args.matrix)?;
            let est = singular_integral(args.x, &c, args.p, config.sigma)?;
            Ok(estimate_payload(&est))
        }
        CircleCmd::Predict(args) => {
            let c = input::matrix_arg(&args.matrix)?;
            let variant = if args.smooth {
                PredictVariant::Smooth { eta: config.eta }
            } else {
                PredictVariant::Unsmoothed
            };
            let est = major_arc_prediction(&c, args.p, config.sigma, variant, config.budget)?;
            Ok(estimate_payload(&est))
        }
        CircleCmd::Arcs(args) => run_arcs(args, config),
        CircleCmd::Moment(args) => {
            let power = args.power.unwrap_or(2.0 + frac_to_f64(config.delta));
            let region = match args.region {
                RegionArg::Full => MomentRegion::Full,
                RegionArg::Major => MomentRegion::Major,
                RegionArg::MajorMinusNarrow => MomentRegion::MajorMinusNarrow,
                RegionArg::Minor => MomentRegion::Minor,
            };
            let est = arc_moment(args.c, args.p, power, region)?;
            Ok(estimate_payload(&est))
        }
    }
}

fn run_arcs(args: &ArcsArgs, config: &Config) -> Result<Rendered, CliError> {
    if args.p == 0 {
        return Err(CliError::Invalid("arc dissections need P >= 1".into()));
    }
    let dissection = match args.family {
        FamilyArg::Wide => ArcDissection::wide(args.p),
        FamilyArg::Narrow => ArcDissection::narrow(args.p),
        FamilyArg::Box => {
            if args.r == 0 {
                return Err(CliError::Invalid("box arcs need --r >= 1".into()));
            }
            ArcDissection::boxes(args.p, args.r)
        }
    };
    if args.family == FamilyArg::Box {
        let spec = args.alpha.as_deref().ok_or_else(|| {
            CliError::Invalid("box arcs answer membership only; pass --alpha".into())
        })?;
        let coords = input::f64_list(spec)?;
        check_unit_range(&coords)?;
        let hit = dissection.member_box(&coords)?;
        let (q, a) = match hit {
            Some((q, nums)) => {
                (Value::from(q), Value::Array(nums.into_iter().map(Value::from).collect()))
            }
            None => (Value::Null, Value::Null),
        };
        return Ok(object_payload(serde_json::Map::from_iter([
            ("alpha".to_string(), Value::Array(coords.into_iter().map(Value::from).collect())),
            ("q".to_string(), q),
            ("a".to_string(), a),
        ])));
    }
    if let Some(k) = args.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut rows = Vec::new();
        let mut csv = String::from("alpha,q,a\n");
        for _ in 0..k {
            let alpha: f64 = rng.gen_range(0.0..1.0);
            let hit = dissection.member(alpha);
            let (q, a) = match hit {
                Some((q, a)) => (Value::from(q), Value::from(a)),
                None => (Value::Null, Value::Null),
            };
            csv.push_str(&format!(
                "{alpha},{},{}\n",
                hit.map(|(q, _)| q.to_string()).unwrap_or_default(),
                hit.map(|(_, a)| a.to_string()).unwrap_or_default()
            ));
            rows.push(Value::Array(vec![Value::from(alpha), q, a]));
        }
        let json = Value::Object(serde_json::Map::from_iter([
            ("seed".to_string(), Value::from(config.seed)),
            ("samples".to_string(), Value::Array(rows)),
        ]))
        .to_string();
        return Ok(Rendered { json, csv });
    }
    if let Some(spec) = &args.alpha {
        let alpha: f64 = spec
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("bad coordinate {spec:?}")))?;
        check_unit_range(&[alpha])?;
        let hit = dissection.member(alpha);
        let (q, a) = match hit {
            Some((q, a)) => (Value::from(q), Value::from(a)),
            None => (Value::Null, Value::Null),
        };
        return Ok(object_payload(serde_json::Map::from_iter([
            ("alpha".to_string(), Value::from(alpha)),
            ("q".to_string(), q),
            ("a".to_string(), a),
        ])));
    }
    let arcs = dissection.arcs();
    let mut csv = String::from("q,a,lo,hi\n");
    let mut rows = Vec::with_capacity(arcs.len());
    for &(q, a) in &arcs {
        let (lo, hi) = dissection.interval(q, a);
        csv.push_str(&format!("{q},{a},{lo},{hi}\n"));
        rows.push(Value::Array(vec![
            Value::from(q),
            Value::from(a),
            Value::from(lo),
            Value::from(hi),
        ]));
    }
    let json = Value::Object(serde_json::Map::from_iter([
        ("family".to_string(), Value::String(family_label(args.family).to_string())),
        ("p".to_string(), Value::from(args.p)),
        ("q_bound".to_string(), Value::from(dissection.q_bound())),
        ("width".to_string(), Value::from(dissection.width())),
        ("arcs".to_string(), Value::Array(rows)),
    ]))
    .to_string();
    Ok(Rendered { json, csv })
}

fn family_label(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Wide => "wide",
        FamilyArg::Narrow => "narrow",
        FamilyArg::Box => "box",
    }
}

fn check_unit_range(coords: &[f64]) -> Result<(), CliError> {
    for &x in coords {
        if !(0.0..1.0).contains(&x) {
            return Err(CliError::Invalid(format!("coordinate {x} outside [0, 1)")));
        }
    }
    Ok(())
}

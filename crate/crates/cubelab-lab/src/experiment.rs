//! Sweep drivers. Each target tags one asserted growth exponent, supplies a
//! default instance, and knows how to produce the measured quantity at a
//! single sweep point; `run_experiment` handles the sweep, the fit, and the
//! verdict.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use cubelab_circle::{mixed_moment_estimate, CircleError};
use cubelab_cubes::{
    exceptional_set, nu1_f64, nu2_f64, pow_frac_floor, xi_f64, CubeError, Frac, RhoTable,
    RhoVariant, SmoothSet,
};
use cubelab_dioph::{
    count_forms, count_i_omega, count_upsilon, count_xi, ColumnKind, ColumnSpec, CountError,
    EngineOptions, LinearFormSystem, Pool, XiOptions,
};
use cubelab_matrix::{build_auxiliary, AuxShape, AuxiliaryMatrix, IntMatrix};

use crate::bound::{bound_check, lower_bound_check, Verdict};
use crate::error::LabError;
use crate::fit::fit_exponent;
use crate::report::{Report, SweepPoint};

/// Experiment targets. Each tag names one entry of the asserted-exponent
/// table and doubles as the CLI token.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Auxiliary-matrix mean value over P; exponent 3R - 2 + 3 omega.
    Lemma24,
    /// Correlation sum with plain counts over N; exponent r + 1/6.
    Thm11,
    /// Correlation sum with smooth-restricted counts; exponent r + xi.
    Thm12,
    /// Folklore bound for the same correlation sum; exponent 7r/6.
    Eq14,
    /// Six-cube diagonal count with l smooth pairs over P; exponent 3 + nu_l.
    Lemma31,
    /// Mixed grid moment K_l over P; exponent 3r + nu_l.
    Thm33,
    /// Representable-tuple kernel count over N; lower exponent s(1-2 xi) - r.
    Thm13,
    /// Mass of over-represented n up to N; exponent 1 + xi - theta.
    Lemma55,
}

impl Target {
    pub fn all() -> [Target; 8] {
        [
            Target::Lemma24,
            Target::Thm11,
            Target::Thm12,
            Target::Eq14,
            Target::Lemma31,
            Target::Thm33,
            Target::Thm13,
            Target::Lemma55,
        ]
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Target::Lemma24 => "lemma24",
            Target::Thm11 => "thm11",
            Target::Thm12 => "thm12",
            Target::Eq14 => "eq14",
            Target::Lemma31 => "lemma31",
            Target::Thm33 => "thm33",
            Target::Thm13 => "thm13",
            Target::Lemma55 => "lemma55",
        }
    }

    pub fn parse(tag: &str) -> Option<Target> {
        Target::all().into_iter().find(|t| t.tag() == tag.to_ascii_lowercase())
    }

    /// Lower-bound targets invert the role of the constant.
    pub fn is_lower_bound(&self) -> bool {
        matches!(self, Target::Thm13)
    }
}

/// Everything a target needs to turn a sweep point into a number. Unused
/// fields are ignored by targets that do not read them.
#[derive(Clone, Debug)]
pub struct Instance {
    /// Coefficient matrix for form-based targets.
    pub matrix: Option<IntMatrix>,
    /// Shifts, one per form.
    pub shifts: Option<Vec<i64>>,
    /// Auxiliary shape (n, r, t, omega).
    pub shape: Option<(usize, usize, usize, usize)>,
    /// Number of smooth-restricted cube pairs.
    pub l: u8,
    pub eta: Frac,
    pub sigma: Frac,
    pub theta: Frac,
}

impl Default for Instance {
    fn default() -> Self {
        Instance {
            matrix: None,
            shifts: None,
            shape: None,
            l: 1,
            eta: Frac::new(1, 2),
            sigma: Frac::new(0, 1),
            theta: Frac::new(1, 12),
        }
    }
}

impl Instance {
    /// The stock instance each target is exercised on when the caller does
    /// not supply one.
    pub fn default_for(target: Target) -> Instance {
        let mut inst = Instance::default();
        match target {
            Target::Lemma24 => inst.shape = Some((0, 3, 2, 0)),
            Target::Thm11 | Target::Thm12 => {
                inst.matrix = Some(IntMatrix::from_rows(&[vec![1, 1]]));
                inst.shifts = Some(vec![0, 1]);
            }
            Target::Eq14 => {
                inst.matrix = Some(IntMatrix::from_rows(&[vec![1, 1]]));
                inst.shifts = Some(vec![0, 0]);
            }
            Target::Lemma31 => {}
            Target::Thm33 => {
                inst.matrix =
                    Some(IntMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]));
            }
            Target::Thm13 => inst.matrix = Some(IntMatrix::from_rows(&[vec![1, 1, -2]])),
            Target::Lemma55 => {}
        }
        inst
    }

    pub fn describe(&self, target: Target) -> String {
        let mut parts = Vec::new();
        if let Some((n, r, t, omega)) = self.shape {
            parts.push(format!("shape ({n},{r},{t})_{omega}"));
        }
        if let Some(m) = &self.matrix {
            parts.push(format!("matrix {}", matrix_text(m)));
        }
        if let Some(h) = &self.shifts {
            parts.push(format!("shifts {h:?}"));
        }
        match target {
            Target::Thm12 | Target::Lemma31 | Target::Thm33 => {
                parts.push(format!("eta {}", self.eta));
            }
            Target::Lemma55 => parts.push(format!("theta {}", self.theta)),
            _ => {}
        }
        if matches!(target, Target::Lemma31 | Target::Thm33) {
            parts.push(format!("l {}", self.l));
        }
        parts.join(", ")
    }
}

fn matrix_text(m: &IntMatrix) -> String {
    let flat = m.to_i64_vec().unwrap_or_default();
    let rows: Vec<String> = flat
        .chunks(m.cols())
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// The asserted exponent for a target on a concrete instance.
pub fn asserted_exponent(target: Target, instance: &Instance) -> Result<f64, LabError> {
    match target {
        Target::Lemma24 => {
            let (n, r, t, omega) = instance
                .shape
                .ok_or_else(|| LabError::BadSpec("target needs a shape".into()))?;
            let big_r = (n * (r - 1) + t) as f64;
            Ok(3.0 * big_r - 2.0 + 3.0 * omega as f64)
        }
        Target::Thm11 => Ok(form_rows(instance)? as f64 + 1.0 / 6.0),
        Target::Thm12 => Ok(form_rows(instance)? as f64 + xi_f64()),
        Target::Eq14 => Ok(7.0 * form_rows(instance)? as f64 / 6.0),
        Target::Lemma31 => Ok(3.0 + nu_l(instance.l)?),
        Target::Thm33 => Ok(3.0 * form_rows(instance)? as f64 + nu_l(instance.l)?),
        Target::Thm13 => {
            let m = matrix_of(instance)?;
            let (r, s) = (m.rows() as f64, m.cols() as f64);
            Ok(s * (1.0 - 2.0 * xi_f64()) - r)
        }
        Target::Lemma55 => Ok(1.0 + xi_f64() - frac_f64(instance.theta)),
    }
}

fn frac_f64(q: Frac) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn nu_l(l: u8) -> Result<f64, LabError> {
    match l {
        1 => Ok(nu1_f64()),
        2 => Ok(nu2_f64()),
        _ => Err(LabError::BadSpec(format!("l = {l} outside {{1, 2}}"))),
    }
}

fn matrix_of(instance: &Instance) -> Result<&IntMatrix, LabError> {
    instance
        .matrix
        .as_ref()
        .ok_or_else(|| LabError::BadSpec("target needs a coefficient matrix".into()))
}

fn form_rows(instance: &Instance) -> Result<usize, LabError> {
    Ok(matrix_of(instance)?.rows())
}

/// Slope slack: tight for exact long sweeps, generous for desk-scale P
/// sweeps and order-of-magnitude quadrature.
pub fn default_tolerance(target: Target) -> f64 {
    match target {
        Target::Thm11 | Target::Thm12 | Target::Eq14 | Target::Lemma55 => 0.1,
        _ => 0.5,
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub target: Target,
    pub instance: Instance,
    pub sweep: Vec<u64>,
    pub exponent: f64,
    pub tolerance: f64,
}

impl ExperimentSpec {
    pub fn new(target: Target, instance: Instance, sweep: Vec<u64>) -> Result<Self, LabError> {
        let exponent = asserted_exponent(target, &instance)?;
        Ok(ExperimentSpec {
            target,
            instance,
            sweep,
            exponent,
            tolerance: default_tolerance(target),
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

#[derive(Clone, Debug)]
pub struct LabOptions {
    pub budget: f64,
    pub partitions: usize,
}

impl Default for LabOptions {
    fn default() -> Self {
        LabOptions { budget: 1e10, partitions: rayon::current_num_threads().max(1) }
    }
}

fn engine(opts: &LabOptions) -> EngineOptions {
    EngineOptions {
        budget: opts.budget,
        partitions: opts.partitions,
        split: None,
        force_direct: false,
    }
}

fn from_count(e: CountError) -> LabError {
    match e {
        CountError::Budget { .. } => LabError::Budget(e.to_string()),
        other => LabError::Measure(other.to_string()),
    }
}

fn from_cube(e: CubeError) -> LabError {
    match e {
        CubeError::GuardExceeded { .. } => LabError::Budget(e.to_string()),
        other => LabError::Measure(other.to_string()),
    }
}

fn from_circle(e: CircleError) -> LabError {
    match e {
        CircleError::Budget { .. } => LabError::Budget(e.to_string()),
        other => LabError::Measure(other.to_string()),
    }
}

/// Working auxiliary instance for a shape: power blocks m[i][j] = (j+1)^i,
/// whose square minors are nonsingular for every window, and unit
/// multipliers.
pub fn canonical_auxiliary(
    shape: (usize, usize, usize, usize),
) -> Result<AuxiliaryMatrix, LabError> {
    let (n, r, t, omega) = shape;
    let shape = AuxShape::new(n, r, t, omega).map_err(|e| LabError::BadSpec(e.to_string()))?;
    let mut blocks = Vec::new();
    for l in 0..=n {
        let (rows, cols) = if l == 0 { (t, t + omega) } else { (r, r) };
        let entries: Vec<Vec<i64>> = (0..rows)
            .map(|i| (0..cols).map(|j| ((j + 1) as i64).pow(i as u32)).collect())
            .collect();
        blocks.push(IntMatrix::from_rows(&entries));
    }
    let lambdas = vec![BigInt::from(1); n + 1];
    build_auxiliary(shape, &lambdas, &blocks).map_err(|e| LabError::BadSpec(e.to_string()))
}

/// The measured quantity for one target at one sweep point.
pub fn measure(
    target: Target,
    instance: &Instance,
    x: u64,
    opts: &LabOptions,
) -> Result<f64, LabError> {
    match target {
        Target::Lemma24 => {
            let shape = instance
                .shape
                .ok_or_else(|| LabError::BadSpec("target needs a shape".into()))?;
            let aux = canonical_auxiliary(shape)?;
            let report = count_i_omega(&aux, x, &engine(opts)).map_err(from_count)?;
            Ok(report.value_f64())
        }
        Target::Thm11 | Target::Thm12 | Target::Eq14 => {
            let a = matrix_of(instance)?;
            let h = instance.shifts.clone().unwrap_or_else(|| vec![0; a.cols()]);
            let variant = if target == Target::Thm12 {
                RhoVariant::Smooth { eta: instance.eta }
            } else {
                RhoVariant::Plain
            };
            let xi_opts = XiOptions { partitions: opts.partitions, ..XiOptions::default() };
            let report = count_xi(a, &h, x, variant, &xi_opts).map_err(from_count)?;
            Ok(report.value_f64())
        }
        Target::Lemma31 => {
            let report = six_cube_diagonal(x, instance.l, instance.eta, opts)?;
            Ok(report)
        }
        Target::Thm33 => {
            let a = matrix_of(instance)?;
            let eta = if instance.l >= 2 { Some(instance.eta) } else { None };
            let est = mixed_moment_estimate(a, x, instance.l, eta, None, opts.budget)
                .map_err(from_circle)?;
            Ok(est.value)
        }
        Target::Thm13 => {
            let c = matrix_of(instance)?;
            let report = count_upsilon(c, x, &engine(opts)).map_err(from_count)?;
            Ok(report.value_f64())
        }
        Target::Lemma55 => {
            let table =
                RhoTable::build_partitioned(x, RhoVariant::Plain, opts.partitions)
                    .map_err(from_cube)?;
            let exc = exceptional_set(&table, instance.theta, x);
            Ok(exc.mass(&table) as f64)
        }
    }
}

/// Count of zeros of sum_j (x_j^3 - y_j^3) with the last l pairs restricted
/// to P^eta-smooth values.
fn six_cube_diagonal(p: u64, l: u8, eta: Frac, opts: &LabOptions) -> Result<f64, LabError> {
    if p == 0 {
        return Err(LabError::BadSpec("six-cube count needs P >= 1".into()));
    }
    if l == 0 || l > 2 {
        return Err(LabError::BadSpec(format!("l = {l} outside {{1, 2}}")));
    }
    let z = pow_frac_floor(p, eta);
    let smooth = SmoothSet::build(p, z).map_err(from_cube)?;
    let smooth_pool = Pool::Set(Arc::new(smooth.members()));
    let full_pool = Pool::Range { lo: 1, hi: p };
    let columns: Vec<ColumnSpec> = (0..3)
        .map(|j| {
            let pool = if j < 3 - l as usize { full_pool.clone() } else { smooth_pool.clone() };
            ColumnSpec {
                coeffs: vec![1],
                kind: ColumnKind::Cubes { signs: vec![1, -1], pools: vec![pool.clone(), pool] },
            }
        })
        .collect();
    let sys = LinearFormSystem { rows: 1, target: vec![0], columns, scale: p };
    let report = count_forms(&sys, &engine(opts)).map_err(from_count)?;
    Ok(report.value_f64())
}

/// Run the sweep, fit the slope, and attach the bound check. A budget trip
/// mid-sweep truncates the report and marks it partial instead of failing.
pub fn run_experiment(spec: &ExperimentSpec, opts: &LabOptions) -> Result<Report, LabError> {
    if spec.sweep.len() < 3 {
        return Err(LabError::BadSpec(format!(
            "sweep of {} points cannot support a fit; need 3",
            spec.sweep.len()
        )));
    }
    if spec.sweep.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LabError::BadSpec("sweep must be strictly increasing".into()));
    }
    let results: Vec<Result<f64, LabError>> = spec
        .sweep
        .par_iter()
        .map(|&x| measure(spec.target, &spec.instance, x, opts))
        .collect();

    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut partial = false;
    for (&x, result) in spec.sweep.iter().zip(results) {
        match result {
            Ok(value) => points.push((x as f64, value)),
            Err(LabError::Budget(_)) => {
                partial = true;
                break;
            }
            Err(other) => return Err(other),
        }
    }

    let mut slope = None;
    let mut constant = None;
    let verdict = if points.len() < 3 {
        "partial".to_string()
    } else {
        let fit = fit_exponent(&points)?;
        slope = Some(fit.slope);
        let check = if spec.target.is_lower_bound() {
            lower_bound_check(&points, spec.exponent, spec.tolerance)?
        } else {
            bound_check(&points, spec.exponent, spec.tolerance)?
        };
        constant = Some(check.constant);
        if partial {
            "partial".to_string()
        } else {
            let slope_ok = if spec.target.is_lower_bound() {
                fit.slope >= spec.exponent - spec.tolerance
            } else {
                fit.slope <= spec.exponent + spec.tolerance
            };
            if slope_ok && check.verdict == Verdict::Consistent {
                "consistent".to_string()
            } else {
                "inconsistent".to_string()
            }
        }
    };

    Ok(Report {
        target: spec.target.tag().to_string(),
        instance: spec.instance.describe(spec.target),
        sweep: points
            .iter()
            .map(|&(x, value)| SweepPoint { x: x as u64, value })
            .collect(),
        exponent: spec.exponent,
        slope,
        k: constant,
        verdict,
        partial,
    })
}

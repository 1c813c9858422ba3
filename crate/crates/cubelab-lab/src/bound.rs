use crate::error::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
        }
    }
}

/// Outcome of comparing a sweep against an asserted exponent.
#[derive(Clone, Debug)]
pub struct BoundCheck {
    /// Minimal constant making the bound hold at every point.
    pub constant: f64,
    /// Per-point required constants, in ascending x order.
    pub ratios: Vec<f64>,
    pub verdict: Verdict,
}

/// Minimal K with value <= K x^(exponent+eps) at every point. A one-sided
/// bound is contradicted by the required constant growing along the sweep,
/// not by it shrinking (true values may sit far below the bound), so the
/// verdict flags growth by more than a factor 2 per step over the upper
/// half of the sweep.
pub fn bound_check(points: &[(f64, f64)], exponent: f64, eps: f64) -> Result<BoundCheck, LabError> {
    let ratios = required_constants(points, |x, v| v / x.powf(exponent + eps))?;
    Ok(assemble(ratios))
}

/// Mirror for lower bounds: minimal K with value >= x^(exponent-eps) / K.
pub fn lower_bound_check(
    points: &[(f64, f64)],
    exponent: f64,
    eps: f64,
) -> Result<BoundCheck, LabError> {
    let ratios = required_constants(points, |x, v| x.powf(exponent - eps) / v)?;
    Ok(assemble(ratios))
}

fn required_constants(
    points: &[(f64, f64)],
    ratio: impl Fn(f64, f64) -> f64,
) -> Result<Vec<f64>, LabError> {
    if points.is_empty() {
        return Err(LabError::BadSpec("bound check needs at least one point".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    for &(x, v) in &sorted {
        if !(x > 0.0 && v > 0.0 && x.is_finite() && v.is_finite()) {
            return Err(LabError::BadSpec(format!("nonpositive sweep point ({x}, {v})")));
        }
    }
    Ok(sorted.into_iter().map(|(x, v)| ratio(x, v)).collect())
}

fn assemble(ratios: Vec<f64>) -> BoundCheck {
    let constant = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let upper = &ratios[ratios.len() / 2..];
    let stable = upper.windows(2).all(|w| w[1] <= 2.0 * w[0]);
    let verdict = if stable { Verdict::Consistent } else { Verdict::Inconsistent };
    BoundCheck { constant, ratios, verdict }
}

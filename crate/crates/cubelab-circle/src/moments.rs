use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arcs::ArcDissection;
use crate::error::CircleError;
use crate::estimate::CircleEstimate;
use crate::quad::adaptive_panels;
use crate::weyl::plain_f;

/// Slice of the circle an arc moment integrates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentRegion {
    Full,
    Major,
    MajorMinusNarrow,
    Minor,
}

impl MomentRegion {
    fn label(self) -> &'static str {
        match self {
            MomentRegion::Full => "full",
            MomentRegion::Major => "major",
            MomentRegion::MajorMinusNarrow => "major-minus-narrow",
            MomentRegion::Minor => "minor",
        }
    }
}

const MOMENT_WORK_BUDGET: f64 = 4e9;

/// Integral of |f(c alpha)|^power over the chosen region. Even integer
/// powers over the full circle come out exactly: the integrand is a
/// trigonometric polynomial with frequencies bounded by (power/2)|c|P^3,
/// so a uniform grid one step finer averages to the true integral.
pub fn arc_moment(
    c: i64,
    p: u64,
    power: f64,
    region: MomentRegion,
) -> Result<CircleEstimate, CircleError> {
    if c == 0 || p == 0 {
        return Err(CircleError::BadParameter("need c != 0 and P >= 1".into()));
    }
    if !(power >= 1.0) || !power.is_finite() {
        return Err(CircleError::BadParameter(format!("power {power} out of range")));
    }
    let est = match region {
        MomentRegion::Full => full_moment(c, p, power)?,
        MomentRegion::Major => major_moment(c, p, power, false)?,
        MomentRegion::MajorMinusNarrow => major_moment(c, p, power, true)?,
        MomentRegion::Minor => {
            let full = full_moment(c, p, power)?;
            let major = major_moment(c, p, power, false)?;
            CircleEstimate::quadrature(
                full.value - major.value,
                full_nodes(&full) + full_nodes(&major),
                full.err_est + major.err_est,
            )
        }
    };
    Ok(est
        .with_param("c", c)
        .with_param("P", p)
        .with_param("power", power)
        .with_param("region", region.label()))
}

fn full_nodes(e: &CircleEstimate) -> u64 {
    match e.method {
        crate::estimate::Method::Quadrature { nodes, .. } => nodes,
        crate::estimate::Method::GridScan { resolution } => resolution,
        crate::estimate::Method::ClosedForm => 0,
    }
}

fn grid_mean(c: i64, p: u64, power: f64, m: u64) -> (f64, f64) {
    let chunk = 1u64 << 14;
    let n_chunks = m.div_ceil(chunk);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(m);
            let mut all = 0.0f64;
            let mut even = 0.0f64;
            for k in lo..hi {
                let val = plain_f(p, c as f64 * k as f64 / m as f64).norm().powf(power);
                all += val;
                if k % 2 == 0 {
                    even += val;
                }
            }
            (all, even)
        })
        .collect();
    let (all, even) = partials
        .into_iter()
        .fold((0.0, 0.0), |acc, x| (acc.0 + x.0, acc.1 + x.1));
    (all / m as f64, even / (m / 2).max(1) as f64)
}

fn full_moment(c: i64, p: u64, power: f64) -> Result<CircleEstimate, CircleError> {
    let half = power / 2.0;
    let even_integer = half.fract() == 0.0 && half >= 1.0;
    let cube = (c.unsigned_abs() as u128) * (p as u128).pow(3);
    let m = if even_integer {
        (half as u128) * cube + 1
    } else {
        (8 * cube).next_multiple_of(2).max(4096)
    };
    let work = m as f64 * p as f64;
    if work > MOMENT_WORK_BUDGET {
        return Err(CircleError::Budget { estimated: work, budget: MOMENT_WORK_BUDGET });
    }
    let m = m as u64;
    let (mean, half_mean) = grid_mean(c, p, power, m);
    let err = if even_integer { 0.0 } else { (mean - half_mean).abs() };
    Ok(CircleEstimate::grid_scan(mean, m)
        .with_err(err)
        .with_param("exact", even_integer))
}

fn major_moment(
    c: i64,
    p: u64,
    power: f64,
    exclude_narrow: bool,
) -> Result<CircleEstimate, CircleError> {
    let wide = ArcDissection::wide(p);
    let narrow = ArcDissection::narrow(p);
    let labels = wide.arcs();

    // Each wide arc, clipped to [0,1], possibly with the inner narrow arc
    // removed, becomes one or two plain integration segments.
    let mut segments: Vec<(f64, f64)> = Vec::new();
    for &(q, a) in &labels {
        let (lo, hi) = wide.interval(q, a);
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        if hi <= lo {
            continue;
        }
        if exclude_narrow && q <= narrow.q_bound() {
            let (nlo, nhi) = narrow.interval(q, a);
            let nlo = nlo.max(lo);
            let nhi = nhi.min(hi);
            if nlo > lo {
                segments.push((lo, nlo));
            }
            if hi > nhi {
                segments.push((nhi, hi));
            }
        } else {
            segments.push((lo, hi));
        }
    }

    let pf = p as f64;
    let cf = c.unsigned_abs() as f64;
    let total_panels: f64 = segments
        .iter()
        .map(|&(lo, hi)| 4.0 * (1.0 + cf * pf.powi(3) * (hi - lo)))
        .sum();
    let work = total_panels * pf * 8.0;
    if work > MOMENT_WORK_BUDGET {
        return Err(CircleError::Budget { estimated: work, budget: MOMENT_WORK_BUDGET });
    }

    let outcomes: Vec<crate::quad::QuadOutcome> = segments
        .par_iter()
        .map(|&(lo, hi)| {
            let f = |alpha: f64| {
                Complex64::new(plain_f(p, c as f64 * alpha).norm().powf(power), 0.0)
            };
            let panels = (4.0 * (1.0 + cf * pf.powi(3) * (hi - lo))).ceil() as u64;
            adaptive_panels(&f, lo, hi, panels, 1e-6, hi - lo)
        })
        .collect();

    let mut value = 0.0;
    let mut err = 0.0;
    let mut nodes = 0u64;
    for o in &outcomes {
        value += o.value.re;
        err += o.est_error;
        nodes += o.nodes;
    }
    Ok(CircleEstimate::quadrature(value, nodes, err).with_param("arcs", labels.len()))
}

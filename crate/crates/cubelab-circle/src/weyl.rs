use num_complex::Complex64;

use cubelab_cubes::{Frac, SmoothSet};

use crate::error::CircleError;

/// e(t) = exp(2 pi i t). The argument is reduced mod 1 first so large
/// phases keep full fractional precision.
pub fn unit(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * t.rem_euclid(1.0))
}

/// A cubic exponential sum over x in (sigma*P, P], optionally restricted to
/// P^eta-smooth x, with integer phase coefficient c: sum of e(c*alpha*x^3).
#[derive(Clone, Debug, PartialEq)]
pub struct WeylSumSpec {
    pub p: u64,
    pub sigma: Frac,
    pub eta: Option<Frac>,
    pub c: i64,
}

impl WeylSumSpec {
    pub fn new(p: u64, sigma: Frac, eta: Option<Frac>, c: i64) -> Result<Self, CircleError> {
        if p == 0 {
            return Err(CircleError::BadParameter("weyl sum needs P >= 1".into()));
        }
        if sigma >= Frac::new(1, 1) {
            return Err(CircleError::BadParameter(format!("sigma = {sigma} not in [0, 1)")));
        }
        if let Some(eta) = eta {
            if eta == Frac::new(0, 1) {
                return Err(CircleError::BadParameter("eta must be positive".into()));
            }
        }
        Ok(WeylSumSpec { p, sigma, eta, c })
    }

    /// Plain full-range sum f(alpha) with coefficient c.
    pub fn plain(p: u64, c: i64) -> Result<Self, CircleError> {
        WeylSumSpec::new(p, Frac::new(0, 1), None, c)
    }

    /// Least admissible x: sigma*P < x, exact in integers.
    pub fn x_min(&self) -> u64 {
        let lo = (*self.sigma.numer() as u128 * self.p as u128) / *self.sigma.denom() as u128;
        lo as u64 + 1
    }

    /// The x values the sum ranges over, ascending.
    pub fn members(&self) -> Result<Vec<u64>, CircleError> {
        let lo = self.x_min();
        if lo > self.p {
            return Ok(Vec::new());
        }
        match self.eta {
            None => Ok((lo..=self.p).collect()),
            Some(eta) => {
                let set = SmoothSet::build_power(self.p, self.p, eta)
                    .map_err(|e| CircleError::BadParameter(e.to_string()))?;
                Ok(set.members_in(lo - 1, self.p))
            }
        }
    }

    pub fn evaluator(&self) -> Result<WeylEvaluator, CircleError> {
        let range = match self.eta {
            None => TermRange::Contiguous { lo: self.x_min(), hi: self.p },
            Some(_) => TermRange::Listed(self.members()?),
        };
        Ok(WeylEvaluator { range, c: self.c })
    }
}

#[derive(Clone, Debug)]
enum TermRange {
    Contiguous { lo: u64, hi: u64 },
    Listed(Vec<u64>),
}

/// Reusable evaluator for one spec; building it once amortises the smooth
/// sieve across many alpha.
#[derive(Clone, Debug)]
pub struct WeylEvaluator {
    range: TermRange,
    c: i64,
}

impl WeylEvaluator {
    pub fn len(&self) -> usize {
        match &self.range {
            TermRange::Contiguous { lo, hi } => {
                if lo > hi {
                    0
                } else {
                    (hi - lo + 1) as usize
                }
            }
            TermRange::Listed(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn eval(&self, alpha: f64) -> Complex64 {
        let theta = self.c as f64 * alpha;
        match &self.range {
            TermRange::Contiguous { lo, hi } => contiguous_sum(*lo, *hi, theta),
            TermRange::Listed(xs) => {
                let mut sum = Complex64::new(0.0, 0.0);
                for &x in xs {
                    let cube = (x as f64) * (x as f64) * (x as f64);
                    sum += unit(theta * cube);
                }
                sum
            }
        }
    }
}

pub fn weyl_sum(spec: &WeylSumSpec, alpha: f64) -> Result<Complex64, CircleError> {
    Ok(spec.evaluator()?.eval(alpha))
}

/// f(alpha) = sum over 1 <= x <= P of e(alpha x^3), by phase recurrence.
pub fn plain_f(p: u64, alpha: f64) -> Complex64 {
    contiguous_sum(1, p, alpha)
}

/// Cubic phases advance by third differences: with u = e(t x^3) one has
/// u(x+1) = u * e(t(3x^2+3x+1)), and the increment's own increment closes
/// at the constant e(6t). Three complex multiplies per term, no sincos.
/// Magnitudes are renormalised periodically to stop drift.
fn contiguous_sum(lo: u64, hi: u64, t: f64) -> Complex64 {
    if lo > hi {
        return Complex64::new(0.0, 0.0);
    }
    let x0 = lo as f64;
    let mut u = unit(t * x0 * x0 * x0);
    let mut d1 = unit(t * (3.0 * x0 * x0 + 3.0 * x0 + 1.0));
    let mut d2 = unit(t * (6.0 * x0 + 6.0));
    let d3 = unit(6.0 * t);
    let mut sum = Complex64::new(0.0, 0.0);
    let n = hi - lo + 1;
    for step in 0..n {
        sum += u;
        u *= d1;
        d1 *= d2;
        d2 *= d3;
        if step % 512 == 511 {
            u /= u.norm();
            d1 /= d1.norm();
            d2 /= d2.norm();
        }
    }
    sum
}

use num_integer::Integer;

use cubelab_cubes::{pow_frac_floor, Frac};

use crate::error::CircleError;

/// The three arc shapes used on the unit torus. Wide arcs live in one
/// dimension with tall denominators; narrow arcs keep q under log log P;
/// box arcs are r-dimensional products around rationals a_i/q with a
/// common denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcFamily {
    Wide,
    Narrow,
    Box { r: usize },
}

/// One family of arcs at scale P, with the derived cutoffs frozen in.
#[derive(Clone, Debug)]
pub struct ArcDissection {
    family: ArcFamily,
    p: u64,
    q_bound: u64,
    /// Wide/narrow: bound on |q alpha - a|. Box: bound on |alpha_i - a_i/q|.
    width: f64,
}

/// log log P floored at 2; desk-scale P would otherwise give degenerate
/// (empty or negative) cutoffs.
pub fn loglog_floor(p: u64) -> f64 {
    let l = (p as f64).ln().ln();
    l.max(2.0)
}

impl ArcDissection {
    /// q <= P^(3/4) (exact integer comparison), |q alpha - a| <= P^(-9/4).
    pub fn wide(p: u64) -> Self {
        assert!(p >= 1, "dissection needs P >= 1");
        let q_bound = pow_frac_floor(p, Frac::new(3, 4)).max(1);
        let width = (p as f64).powf(-2.25);
        ArcDissection { family: ArcFamily::Wide, p, q_bound, width }
    }

    /// q <= L, |q alpha - a| <= L P^(-3), L = log log P.
    pub fn narrow(p: u64) -> Self {
        assert!(p >= 1, "dissection needs P >= 1");
        let l = loglog_floor(p);
        let pf = p as f64;
        ArcDissection {
            family: ArcFamily::Narrow,
            p,
            q_bound: l.floor() as u64,
            width: l / (pf * pf * pf),
        }
    }

    /// r-dimensional boxes: common q <= Q, per-coordinate
    /// |alpha_i - a_i/q| <= Q P^(-3), Q = L^(10r).
    pub fn boxes(p: u64, r: usize) -> Self {
        assert!(p >= 1, "dissection needs P >= 1");
        assert!(r >= 1, "box arcs need a dimension");
        let l = loglog_floor(p);
        let q = l.powi(10 * r as i32).max(2.0);
        let pf = p as f64;
        ArcDissection {
            family: ArcFamily::Box { r },
            p,
            q_bound: q.floor() as u64,
            width: q / (pf * pf * pf),
        }
    }

    pub fn family(&self) -> ArcFamily {
        self.family
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q_bound(&self) -> u64 {
        self.q_bound
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Covering arc of a point of [0, 1), smallest q first. Labels are
    /// coprime pairs with 0 <= a <= q. Wide and narrow families only.
    pub fn member(&self, alpha: f64) -> Option<(u64, u64)> {
        assert!(
            !matches!(self.family, ArcFamily::Box { .. }),
            "box membership takes a coordinate vector"
        );
        assert!((0.0..1.0).contains(&alpha), "alpha must lie in [0, 1)");
        // Only the nearest integer can sit within the width, and a reduced
        // close rational is a continued-fraction convergent as long as the
        // width stays under 1/(2 q_bound). Otherwise fall back to scanning.
        if 2.0 * self.width * self.q_bound as f64 >= 1.0 {
            for q in 1..=self.q_bound {
                if let Some(pair) = self.check_q(alpha, q) {
                    return Some(pair);
                }
            }
            return None;
        }
        for q in convergent_denominators(alpha, self.q_bound) {
            if let Some(pair) = self.check_q(alpha, q) {
                return Some(pair);
            }
        }
        None
    }

    fn check_q(&self, alpha: f64, q: u64) -> Option<(u64, u64)> {
        let a = (q as f64 * alpha).round();
        if a < 0.0 || a > q as f64 {
            return None;
        }
        let a_int = a as u64;
        if (q as f64 * alpha - a).abs() <= self.width && a_int.gcd(&q) == 1 {
            return Some((q, a_int));
        }
        None
    }

    /// Covering box of a point of [0, 1)^r: the common denominator and one
    /// numerator per coordinate, gcd(q, a_1, ..., a_r) = 1. Errors when the
    /// denominator scan would be unreasonably long (only reachable far
    /// outside the P this family is built for).
    pub fn member_box(&self, alpha: &[f64]) -> Result<Option<(u64, Vec<u64>)>, CircleError> {
        let r = match self.family {
            ArcFamily::Box { r } => r,
            _ => panic!("scalar families take a single alpha"),
        };
        if alpha.len() != r {
            return Err(CircleError::BadParameter(format!(
                "expected {r} coordinates, got {}",
                alpha.len()
            )));
        }
        for &x in alpha {
            if !(0.0..1.0).contains(&x) {
                return Err(CircleError::BadParameter("coordinates must lie in [0, 1)".into()));
            }
        }
        if self.width < 0.5 && self.q_bound > 4_000_000 {
            return Err(CircleError::Budget { estimated: self.q_bound as f64, budget: 4e6 });
        }
        for q in 1..=self.q_bound {
            let mut nums = Vec::with_capacity(r);
            let mut g = q;
            let mut ok = true;
            for &x in alpha {
                let a = (q as f64 * x).round();
                if (x - a / q as f64).abs() > self.width {
                    ok = false;
                    break;
                }
                let a_int = a as u64;
                nums.push(a_int);
                g = g.gcd(&a_int);
            }
            if ok && g == 1 {
                return Ok(Some((q, nums)));
            }
            // Width >= 1/2 means q = 1 already covers every point.
            if self.width >= 0.5 {
                break;
            }
        }
        Ok(None)
    }

    /// All arc labels of a scalar family: coprime (q, a), 0 <= a <= q.
    pub fn arcs(&self) -> Vec<(u64, u64)> {
        assert!(
            !matches!(self.family, ArcFamily::Box { .. }),
            "box arcs are not enumerated one-dimensionally"
        );
        let mut out = Vec::new();
        for q in 1..=self.q_bound {
            for a in 0..=q {
                if a.gcd(&q) == 1 {
                    out.push((q, a));
                }
            }
        }
        out
    }

    /// The interval {alpha : |q alpha - a| <= width}, unclipped.
    pub fn interval(&self, q: u64, a: u64) -> (f64, f64) {
        let center = a as f64 / q as f64;
        let half = self.width / q as f64;
        (center - half, center + half)
    }
}

/// Denominators of the continued-fraction convergents of alpha, ascending,
/// capped at qmax. Always starts with 1.
pub fn convergent_denominators(alpha: f64, qmax: u64) -> Vec<u64> {
    let mut denoms = vec![1u64];
    let mut x = alpha.fract();
    let (mut q_prev, mut q_cur) = (0u64, 1u64);
    for _ in 0..64 {
        if x.abs() < 1e-15 {
            break;
        }
        x = 1.0 / x;
        let a = x.floor();
        if a >= qmax as f64 * 2.0 {
            // The next denominator already overshoots.
            break;
        }
        let next = match (a as u64).checked_mul(q_cur).and_then(|v| v.checked_add(q_prev)) {
            Some(v) => v,
            None => break,
        };
        if next > qmax {
            break;
        }
        denoms.push(next);
        (q_prev, q_cur) = (q_cur, next);
        x -= a;
    }
    denoms
}

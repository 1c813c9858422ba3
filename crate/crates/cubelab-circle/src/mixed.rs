use rayon::prelude::*;

use cubelab_cubes::Frac;
use cubelab_matrix::IntMatrix;

use crate::error::CircleError;
use crate::estimate::CircleEstimate;
use crate::weyl::{plain_f, WeylSumSpec};

/// Deterministic pairwise summation; the result does not depend on how the
/// slice was produced, only on its order.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Riemann estimate of the mixed moment: the mean over the alpha-grid of
/// prod_j |F_l(gamma_j(alpha))| with gamma_j the j-th column form of C,
/// F_1 = |f|^3 and F_2 = |f| |g|^2. All column forms reduce to integer
/// grid indices, so a single period table of F_l drives the whole scan.
/// This is an order-of-magnitude tool, not a certified integral.
pub fn mixed_moment_estimate(
    c: &IntMatrix,
    p: u64,
    l: u8,
    eta: Option<Frac>,
    grid: Option<u64>,
    budget: f64,
) -> Result<CircleEstimate, CircleError> {
    if p == 0 {
        return Err(CircleError::BadParameter("need P >= 1".into()));
    }
    let r = c.rows();
    let s = c.cols();
    if r == 0 || s == 0 {
        return Err(CircleError::BadParameter("coefficient matrix is empty".into()));
    }
    if r > 2 {
        return Err(CircleError::BadParameter(format!(
            "tensor grid supports r <= 2, got {r}"
        )));
    }
    if !matches!(l, 1 | 2) {
        return Err(CircleError::BadParameter(format!("factor index l = {l} not in {{1, 2}}")));
    }
    if l == 2 && eta.is_none() {
        return Err(CircleError::BadParameter("l = 2 needs a smoothness eta".into()));
    }
    let flat = c
        .to_i64_vec()
        .map_err(|_| CircleError::BadParameter("coefficients exceed i64".into()))?;
    let c_max = flat.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    if c_max == 0 {
        return Err(CircleError::BadParameter("coefficient matrix is zero".into()));
    }

    let min_grid = 8u128 * c_max as u128 * (p as u128).pow(3);
    let m = match grid {
        None => min_grid,
        Some(g) => {
            if (g as u128) < min_grid {
                return Err(CircleError::BadParameter(format!(
                    "grid {g} coarser than the required spacing (need >= {min_grid})"
                )));
            }
            if g % 2 != 0 {
                return Err(CircleError::BadParameter("grid must be even".into()));
            }
            g as u128
        }
    };
    let work = (m as f64).powi(r as i32) * (s as f64 + 1.0) + m as f64 * p as f64;
    if work > budget {
        return Err(CircleError::Budget { estimated: work, budget });
    }
    let m = m as u64;

    // Period table of F_l on the grid.
    let g_eval = match (l, eta) {
        (2, Some(eta)) => Some(WeylSumSpec::new(p, Frac::new(0, 1), Some(eta), 1)?.evaluator()?),
        _ => None,
    };
    let table: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|k| {
            let alpha = k as f64 / m as f64;
            let f = plain_f(p, alpha).norm();
            match &g_eval {
                None => f * f * f,
                Some(g) => {
                    let gm = g.eval(alpha).norm();
                    f * gm * gm
                }
            }
        })
        .collect();

    let mi = m as i64;
    let steps: Vec<Vec<i64>> = (0..s)
        .map(|j| (0..r).map(|i| flat[i * s + j].rem_euclid(mi)).collect())
        .collect();

    let (mean, half_mean) = match r {
        1 => {
            let rows: Vec<(f64, f64)> = (0..m)
                .into_par_iter()
                .map(|k| {
                    let mut prod = 1.0f64;
                    for st in &steps {
                        let idx = (st[0] * k as i64).rem_euclid(mi) as usize;
                        prod *= table[idx];
                    }
                    (prod, if k % 2 == 0 { prod } else { 0.0 })
                })
                .collect();
            let all: Vec<f64> = rows.iter().map(|x| x.0).collect();
            let even: Vec<f64> = rows.iter().map(|x| x.1).collect();
            (
                pairwise_sum(&all) / m as f64,
                pairwise_sum(&even) / (m / 2) as f64,
            )
        }
        _ => {
            let rows: Vec<(f64, f64)> = (0..m)
                .into_par_iter()
                .map(|k1| {
                    let mut idx: Vec<i64> =
                        steps.iter().map(|st| (st[0] * k1 as i64).rem_euclid(mi)).collect();
                    let mut row = Vec::with_capacity(m as usize);
                    for _k2 in 0..m {
                        let mut prod = 1.0f64;
                        for (j, st) in steps.iter().enumerate() {
                            prod *= table[idx[j] as usize];
                            idx[j] += st[1];
                            if idx[j] >= mi {
                                idx[j] -= mi;
                            }
                        }
                        row.push(prod);
                    }
                    let total = pairwise_sum(&row);
                    let even: Vec<f64> = if k1 % 2 == 0 {
                        row.iter().step_by(2).copied().collect()
                    } else {
                        Vec::new()
                    };
                    (total, pairwise_sum(&even))
                })
                .collect();
            let all: Vec<f64> = rows.iter().map(|x| x.0).collect();
            let even: Vec<f64> = rows.iter().map(|x| x.1).collect();
            let mf = m as f64;
            let hf = (m / 2) as f64;
            (
                pairwise_sum(&all) / (mf * mf),
                pairwise_sum(&even) / (hf * hf),
            )
        }
    };

    Ok(CircleEstimate::grid_scan(mean, m)
        .with_err((mean - half_mean).abs())
        .with_param("P", p)
        .with_param("l", l)
        .with_param("r", r)
        .with_param("s", s)
        .with_param("rigor", "order-of-magnitude"))
}

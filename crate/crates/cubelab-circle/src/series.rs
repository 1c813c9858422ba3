use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use cubelab_matrix::IntMatrix;

use crate::error::CircleError;
use crate::estimate::{CircleEstimate, Method};
use crate::gauss::GaussTable;

/// Column views of the coefficient matrix, entries narrowed to i64.
fn form_columns(c: &IntMatrix) -> Result<Vec<Vec<i64>>, CircleError> {
    let flat = c
        .to_i64_vec()
        .map_err(|_| CircleError::BadParameter("coefficients exceed i64".into()))?;
    let (rows, cols) = c.format();
    Ok((0..cols).map(|j| (0..rows).map(|i| flat[i * cols + j]).collect()).collect())
}

fn a_of_q_work(q: u64, r: usize, s: usize) -> f64 {
    // One table build is quadratic in q; the a-odometer visits q^r points,
    // each touching s forms.
    (q as f64) * (q as f64) + (q as f64).powi(r as i32) * (s + r) as f64
}

/// A(q): the local density factor at modulus q. Sums the normalised cubes
/// of Gauss sums over all residue tuples a in [1, q]^r with
/// gcd(q, a_1, ..., a_r) = 1:
///   A(q) = q^(-3s) sum_a prod_j S(q, gamma_j(a))^3.
/// The a-sum is invariant under a -> q - a, which conjugates every factor,
/// so A(q) is real; the imaginary residue is folded into roundoff.
pub fn a_of_q(q: u64, c: &IntMatrix, budget: f64) -> Result<f64, CircleError> {
    Ok(a_of_q_complex(q, c, budget)?.re)
}

fn a_of_q_complex(q: u64, c: &IntMatrix, budget: f64) -> Result<Complex64, CircleError> {
    if q == 0 {
        return Err(CircleError::BadParameter("modulus must be positive".into()));
    }
    let r = c.rows();
    let s = c.cols();
    if r == 0 || s == 0 {
        return Err(CircleError::BadParameter("coefficient matrix is empty".into()));
    }
    let work = a_of_q_work(q, r, s);
    if work > budget {
        return Err(CircleError::Budget { estimated: work, budget });
    }
    let cols = form_columns(c)?;
    let table = GaussTable::build(q);
    Ok(a_sum_over_residues(q, &cols, &table) * (q as f64).powi(-3 * s as i32))
}

fn a_sum_over_residues(q: u64, cols: &[Vec<i64>], table: &GaussTable) -> Complex64 {
    let r = cols[0].len();
    let qi = q as i64;
    let mut a = vec![1i64; r];
    let mut acc = Complex64::new(0.0, 0.0);
    loop {
        let mut g = q;
        for &ai in &a {
            g = g.gcd(&(ai as u64));
        }
        if g == 1 {
            let mut term = Complex64::new(1.0, 0.0);
            for col in cols {
                let mut gamma = 0i64;
                for (ci, ai) in col.iter().zip(&a) {
                    gamma = (gamma + ci.rem_euclid(qi) * ai).rem_euclid(qi);
                }
                let s_val = table.get(gamma);
                term *= s_val * s_val * s_val;
            }
            acc += term;
        }
        // Odometer over [1, q]^r.
        let mut k = 0;
        loop {
            if k == r {
                return acc;
            }
            a[k] += 1;
            if a[k] <= qi {
                break;
            }
            a[k] = 1;
            k += 1;
        }
    }
}

/// Truncated singular series S(Q) = sum over q <= Q of A(q), with a tail
/// estimate of shape K * 2r * Q^(-1/(2r)): the terms obey
/// |A(q)| <= K q^(-1 - 1/(2r)) empirically, and the integral of that bound
/// past Q is the recorded error scale.
pub fn singular_series(
    q_max: u64,
    c: &IntMatrix,
    budget: f64,
) -> Result<CircleEstimate, CircleError> {
    if q_max == 0 {
        return Err(CircleError::BadParameter("series cutoff must be positive".into()));
    }
    let r = c.rows();
    let s = c.cols();
    if r == 0 || s == 0 {
        return Err(CircleError::BadParameter("coefficient matrix is empty".into()));
    }
    let total_work: f64 = (1..=q_max).map(|q| a_of_q_work(q, r, s)).sum();
    if total_work > budget {
        return Err(CircleError::Budget { estimated: total_work, budget });
    }
    let terms: Vec<f64> = (1..=q_max)
        .into_par_iter()
        .map(|q| a_of_q_complex(q, c, budget).map(|z| z.re))
        .collect::<Result<_, _>>()?;
    let value: f64 = terms.iter().sum();

    let tail_exp = -1.0 / (2.0 * r as f64);
    let k = terms
        .iter()
        .enumerate()
        .skip(1)
        .map(|(idx, t)| {
            let q = (idx + 1) as f64;
            t.abs() * q.powf(1.0 - tail_exp)
        })
        .fold(0.0f64, f64::max);
    let tail = k * 2.0 * r as f64 * (q_max as f64).powf(tail_exp);

    Ok(CircleEstimate {
        value,
        err_est: tail,
        method: Method::ClosedForm,
        params: Default::default(),
    }
    .with_param("q_max", q_max)
    .with_param("tail_exponent", tail_exp))
}

use num_complex::Complex64;
use rayon::prelude::*;

use cubelab_cubes::{frac_to_f64, Frac};
use cubelab_matrix::IntMatrix;

use crate::error::CircleError;
use crate::estimate::CircleEstimate;
use crate::mixed::pairwise_sum;
use crate::oscillatory::v_integral;
use crate::quad::gauss_legendre;

fn form_columns(c: &IntMatrix) -> Result<Vec<Vec<i64>>, CircleError> {
    let flat = c
        .to_i64_vec()
        .map_err(|_| CircleError::BadParameter("coefficients exceed i64".into()))?;
    let (rows, cols) = c.format();
    Ok((0..cols).map(|j| (0..rows).map(|i| flat[i * cols + j]).collect()).collect())
}

/// V(beta) = prod_j v(gamma_j(beta))^3 at one point of the beta-box.
fn v_product(
    beta: &[f64],
    cols: &[Vec<i64>],
    p: u64,
    sigma: Frac,
) -> Result<Complex64, CircleError> {
    let mut prod = Complex64::new(1.0, 0.0);
    for col in cols {
        let gamma: f64 = col.iter().zip(beta).map(|(&c, &b)| c as f64 * b).sum();
        let v = v_integral(gamma, p, sigma)?.value;
        prod *= v * v * v;
    }
    Ok(prod)
}

/// One-dimensional V along the line beta, with v evaluated once per
/// distinct |coefficient|; sign flips are conjugations.
fn v_line(beta: f64, coeffs: &[i64], zero_factor: f64, p: u64, sigma: Frac) -> Result<Complex64, CircleError> {
    let mut uniq: Vec<u64> = coeffs.iter().map(|c| c.unsigned_abs()).filter(|&c| c != 0).collect();
    uniq.sort_unstable();
    uniq.dedup();
    let vals: Vec<(u64, Complex64)> = uniq
        .iter()
        .map(|&c| Ok((c, v_integral(c as f64 * beta, p, sigma)?.value)))
        .collect::<Result<_, CircleError>>()?;
    let mut prod = Complex64::new(zero_factor, 0.0);
    for &c in coeffs {
        if c == 0 {
            continue;
        }
        let v = vals.iter().find(|&&(u, _)| u == c.unsigned_abs()).expect("present").1;
        let v = if c < 0 { v.conj() } else { v };
        prod *= v * v * v;
    }
    Ok(prod)
}

/// J(X): the truncated singular integral of V over the box
/// [-X P^-3, X P^-3]^r. One dimension uses fixed Gauss-Legendre panels
/// sized at six oscillation cycles each, with a half-order rerun as the
/// error witness; higher dimensions use a tensor Gauss-Legendre grid whose
/// node count doubles until the value settles. Realness comes from the
/// symmetry of the box; the imaginary residue is reported inside the error.
pub fn singular_integral(
    x: f64,
    c: &IntMatrix,
    p: u64,
    sigma: Frac,
) -> Result<CircleEstimate, CircleError> {
    if !(x > 0.0) {
        return Err(CircleError::BadParameter("box scale X must be positive".into()));
    }
    if p == 0 {
        return Err(CircleError::BadParameter("singular integral needs P >= 1".into()));
    }
    let r = c.rows();
    let s = c.cols();
    if r == 0 || s == 0 {
        return Err(CircleError::BadParameter("coefficient matrix is empty".into()));
    }
    if r > 3 {
        return Err(CircleError::BadParameter(format!(
            "tensor quadrature supports r <= 3, got {r}"
        )));
    }
    let cols = form_columns(c)?;
    let pf = p as f64;
    let w = x / (pf * pf * pf);

    let est = if r == 1 {
        let coeffs: Vec<i64> = cols.iter().map(|col| col[0]).collect();
        let zero_cols = coeffs.iter().filter(|&&c| c == 0).count();
        let zero_factor = ((1.0 - frac_to_f64(sigma)) * pf).powi(3 * zero_cols as i32);
        // Each factor v(c beta)^3 completes 3 |c| |beta| P^3 cycles; six
        // cycles per panel keeps GL-64 far inside its convergence regime.
        let total_cycles: f64 = coeffs.iter().map(|&c| 6.0 * c.abs() as f64 * x).sum();
        let panels = (total_cycles / 6.0).ceil().max(8.0);
        if panels > 2e6 {
            return Err(CircleError::Budget { estimated: panels, budget: 2e6 });
        }
        let panels = panels as u64;
        let fine = gauss_legendre(64);
        let coarse = gauss_legendre(32);
        let per_panel: Vec<(Complex64, f64)> = (0..panels)
            .into_par_iter()
            .map(|k| {
                let lo = -w + 2.0 * w * k as f64 / panels as f64;
                let hi = -w + 2.0 * w * (k + 1) as f64 / panels as f64;
                let mid = 0.5 * (lo + hi);
                let half = 0.5 * (hi - lo);
                let eval = |rule: &[(f64, f64)]| -> Result<Complex64, CircleError> {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(node, weight) in rule {
                        acc += weight
                            * v_line(mid + half * node, &coeffs, zero_factor, p, sigma)?;
                    }
                    Ok(half * acc)
                };
                let f = eval(&fine)?;
                let g = eval(&coarse)?;
                Ok((f, (f - g).norm()))
            })
            .collect::<Result<_, CircleError>>()?;
        let res: Vec<f64> = per_panel.iter().map(|x| x.0.re).collect();
        let ims: Vec<f64> = per_panel.iter().map(|x| x.0.im).collect();
        let errs: Vec<f64> = per_panel.iter().map(|x| x.1).collect();
        let value = pairwise_sum(&res);
        let err = pairwise_sum(&errs) + pairwise_sum(&ims).abs();
        CircleEstimate::quadrature(value, panels * 96, err)
    } else {
        let mut prev: Option<f64> = None;
        let mut value = 0.0f64;
        let mut imag = 0.0f64;
        let mut nodes_total = 0u64;
        let mut n = 8usize;
        let mut change = f64::INFINITY;
        while n <= 64 {
            let rule = gauss_legendre(n);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut idx = vec![0usize; r];
            'grid: loop {
                let beta: Vec<f64> = idx.iter().map(|&i| rule[i].0 * w).collect();
                let weight: f64 = idx.iter().map(|&i| rule[i].1 * w).product();
                acc += weight * v_product(&beta, &cols, p, sigma)?;
                let mut k = 0;
                loop {
                    if k == r {
                        break 'grid;
                    }
                    idx[k] += 1;
                    if idx[k] < n {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
            nodes_total += (n as u64).pow(r as u32);
            value = acc.re;
            imag = acc.im.abs();
            if let Some(pv) = prev {
                change = (value - pv).abs();
                if change <= 1e-4 * value.abs().max(1e-12) {
                    break;
                }
            }
            prev = Some(value);
            n *= 2;
        }
        CircleEstimate::quadrature(value, nodes_total, change + imag)
    };
    Ok(est
        .with_param("X", x)
        .with_param("P", p)
        .with_param("sigma", sigma)
        .with_param("r", r)
        .with_param("s", s))
}

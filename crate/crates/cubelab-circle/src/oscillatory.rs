use std::sync::OnceLock;

use num_complex::Complex64;

use cubelab_cubes::{frac_to_f64, Frac};

use crate::error::CircleError;
use crate::quad::gauss_legendre;
use crate::weyl::unit;

/// Relative tolerance for the oscillatory quadrature.
pub const V_REL_TOL: f64 = 1e-8;

/// Result of integrating e(beta gamma^3) d gamma over (sigma*P, P).
#[derive(Clone, Copy, Debug)]
pub struct VQuad {
    pub value: Complex64,
    pub est_error: f64,
    pub nodes: u64,
    /// False when the recorded error bound missed the tolerance.
    pub converged: bool,
}

fn gl_rule(n: usize) -> &'static Vec<(f64, f64)> {
    static GL64: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    static GL32: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    match n {
        64 => GL64.get_or_init(|| gauss_legendre(64)),
        _ => GL32.get_or_init(|| gauss_legendre(32)),
    }
}

fn gl_sum(beta: f64, lo: f64, hi: f64, rule: &[(f64, f64)]) -> Complex64 {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in rule {
        let g = mid + half * x;
        acc += w * unit(beta * g * g * g);
    }
    half * acc
}

/// Gamma-space panel carrying at most a handful of cycles: GL-64 with a
/// GL-32 rerun as the error witness.
fn gl_panel(beta: f64, lo: f64, hi: f64) -> (Complex64, f64, u64) {
    let fine = gl_sum(beta, lo, hi, gl_rule(64));
    let coarse = gl_sum(beta, lo, hi, gl_rule(32));
    (fine, (fine - coarse).norm(), 96)
}

/// High-frequency panel of (1/3) u^(-2/3) e^(i omega u) du over [p, q],
/// 0 < p < q, by repeated integration by parts. Each pass trades one
/// derivative of the amplitude for a factor 1/(i omega); the dropped tail
/// integral is bounded exactly (the K-th derivative of u^(-2/3) is
/// monotone) and returned as the error share.
fn by_parts_panel(p: f64, q: f64, omega: f64) -> (Complex64, f64, u64) {
    const TERMS: usize = 12;
    let i_omega = Complex64::new(0.0, omega);
    let ep = Complex64::from_polar(1.0, omega * p);
    let eq = Complex64::from_polar(1.0, omega * q);
    let mut coeff = 1.0f64 / 3.0;
    let mut expo = -2.0f64 / 3.0;
    let mut inv = Complex64::new(1.0, 0.0);
    let mut sign = 1.0f64;
    let mut total = Complex64::new(0.0, 0.0);
    for _ in 0..TERMS {
        inv /= i_omega;
        total += sign * inv * (eq * (coeff * q.powf(expo)) - ep * (coeff * p.powf(expo)));
        coeff *= expo;
        expo -= 1.0;
        sign = -sign;
    }
    // coeff, expo now describe the TERMS-th derivative; expo < -1.
    let anti = (q.powf(expo + 1.0) - p.powf(expo + 1.0)) / (expo + 1.0);
    let remainder = coeff.abs() * anti.abs() / omega.abs().powi(TERMS as i32);
    (total, remainder, 2)
}

/// v(beta) = integral from sigma*P to P of e(beta gamma^3) d gamma.
/// The window splits at the point where omega u = 100 in the u = gamma^3
/// variable: below it, Gauss-Legendre panels of at most four cycles each
/// (GL-64 with a GL-32 witness); above it, geometrically growing panels
/// handled by the integration-by-parts expansion, whose dropped tail is
/// bounded explicitly. Cost is logarithmic in the cycle count |beta| P^3.
pub fn v_integral(beta: f64, p: u64, sigma: Frac) -> Result<VQuad, CircleError> {
    if p == 0 {
        return Err(CircleError::BadParameter("v integral needs P >= 1".into()));
    }
    if sigma >= Frac::new(1, 1) {
        return Err(CircleError::BadParameter(format!("sigma = {sigma} not in [0, 1)")));
    }
    let pf = p as f64;
    let a = frac_to_f64(sigma) * pf;
    let b = pf;
    let (ca, cb) = (a * a * a, b * b * b);
    let omega = 2.0 * std::f64::consts::PI * beta;

    let mut panels: Vec<(Complex64, f64, u64)> = Vec::new();
    if beta.abs() * (cb - ca) <= 4.0 {
        panels.push(gl_panel(beta, a, b));
    } else {
        let u_break = (100.0 / omega.abs()).clamp(ca, cb);
        let gl_cycles = beta.abs() * (u_break - ca);
        let gl_panels = (gl_cycles / 4.0).ceil() as u64;
        for i in 0..gl_panels {
            let lo = ca + (u_break - ca) * i as f64 / gl_panels as f64;
            let hi = ca + (u_break - ca) * (i + 1) as f64 / gl_panels as f64;
            panels.push(gl_panel(beta, lo.cbrt(), hi.cbrt()));
        }
        let mut lo = u_break;
        while lo < cb {
            let hi = (2.0 * lo).min(cb);
            panels.push(by_parts_panel(lo, hi, omega));
            lo = hi;
        }
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0f64;
    let mut nodes = 0u64;
    for &(v, e, n) in &panels {
        value += v;
        err += e + f64::EPSILON * v.norm();
        nodes += n;
    }
    let tol = V_REL_TOL * value.norm().max(1e-9 * (b - a));
    Ok(VQuad { value, est_error: err, nodes, converged: err <= tol })
}

use num_complex::Complex64;

/// Outcome of one adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadOutcome {
    pub value: Complex64,
    pub est_error: f64,
    pub nodes: u64,
    pub converged: bool,
}

/// Composite adaptive Simpson over [a, b]. The base panels must already
/// resolve every oscillation (one panel per cycle or finer); bisection then
/// drives the per-panel Richardson error under rel_tol relative to the
/// rough whole-interval value. floor_scale guards the tolerance when the
/// integral nearly cancels.
pub fn adaptive_panels<F>(
    f: &F,
    a: f64,
    b: f64,
    base_panels: u64,
    rel_tol: f64,
    floor_scale: f64,
) -> QuadOutcome
where
    F: Fn(f64) -> Complex64 + Sync,
{
    assert!(base_panels >= 1);
    assert!(b >= a);
    let panels = base_panels;
    let h = (b - a) / panels as f64;
    let eval_panel = |k: u64| {
        let lo = a + k as f64 * h;
        let hi = if k + 1 == panels { b } else { a + (k + 1) as f64 * h };
        let mid = 0.5 * (lo + hi);
        (lo, hi, f(lo), f(mid), f(hi))
    };
    // Parallelism only pays off on large panel counts; results are collected
    // in index order either way, so the reduction order is fixed.
    let rough: Vec<(f64, f64, Complex64, Complex64, Complex64)> = if panels >= 64 {
        use rayon::prelude::*;
        (0..panels).into_par_iter().map(eval_panel).collect()
    } else {
        (0..panels).map(eval_panel).collect()
    };
    let mut whole = Complex64::new(0.0, 0.0);
    for &(lo, hi, flo, fmid, fhi) in &rough {
        whole += (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    }
    let scale = whole.norm().max(floor_scale);
    let tol_per_panel = rel_tol * scale / panels as f64;

    let refine = |&(lo, hi, flo, fmid, fhi): &(f64, f64, Complex64, Complex64, Complex64)| {
        let start = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        let mut nodes = 0u64;
        let (value, err, ok) =
            adapt(f, lo, hi, flo, fmid, fhi, start, tol_per_panel, 24, &mut nodes);
        (value, err, nodes, ok)
    };
    let refined: Vec<(Complex64, f64, u64, bool)> = if panels >= 64 {
        use rayon::prelude::*;
        rough.par_iter().map(refine).collect()
    } else {
        rough.iter().map(refine).collect()
    };

    let mut value = Complex64::new(0.0, 0.0);
    let mut est_error = 0.0f64;
    let mut nodes = 3 * panels;
    let mut converged = true;
    for (v, e, n, ok) in refined {
        value += v;
        est_error += e;
        nodes += n;
        converged &= ok;
    }
    QuadOutcome { value, est_error, nodes, converged }
}

#[allow(clippy::too_many_arguments)]
fn adapt<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
    nodes: &mut u64,
) -> (Complex64, f64, bool)
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    *nodes += 2;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.norm() <= 15.0 * tol || depth == 0 {
        // Richardson extrapolation; the discarded term sets the error scale.
        (left + right + delta / 15.0, delta.norm() / 15.0, delta.norm() <= 15.0 * tol || depth > 0)
    } else {
        let (lv, le, lok) = adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, nodes);
        let (rv, re, rok) = adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, nodes);
        (lv + rv, le + re, lok && rok)
    }
}

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1],
/// by Newton iteration from the Chebyshev angles.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x).
            let (mut p0, mut p1) = (1.0f64, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            dp = n as f64 * (x * pn - p0) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        // x^2 over [0, 3] = 9.
        let f = |x: f64| Complex64::new(x * x, 0.0);
        let q = adaptive_panels(&f, 0.0, 3.0, 2, 1e-10, 1e-6);
        assert!((q.value.re - 9.0).abs() < 1e-10);
        assert!(q.converged);
    }

    #[test]
    fn resolves_oscillation() {
        // cos(40 x) over [0, pi]: exact sin(40 pi)/40 = 0.
        let f = |x: f64| Complex64::new((40.0 * x).cos(), 0.0);
        let q = adaptive_panels(&f, 0.0, std::f64::consts::PI, 64, 1e-9, 1e-3);
        assert!(q.value.re.abs() < 1e-8);
    }

    #[test]
    fn legendre_rules_hit_known_weights() {
        let two = gauss_legendre(2);
        let x = 1.0 / 3.0f64.sqrt();
        assert!((two[0].0 + x).abs() < 1e-12 && (two[1].0 - x).abs() < 1e-12);
        assert!((two[0].1 - 1.0).abs() < 1e-12 && (two[1].1 - 1.0).abs() < 1e-12);
        // Degree-7 polynomial integrated exactly by 4 nodes.
        let four = gauss_legendre(4);
        let integral: f64 = four.iter().map(|&(x, w)| w * (x.powi(7) + x.powi(6))).sum();
        assert!((integral - 2.0 / 7.0).abs() < 1e-12);
    }
}

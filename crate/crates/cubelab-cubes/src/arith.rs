//! Exact integer arithmetic used by the counting routines: cube helpers,
//! floor/ceil k-th roots, and rational exponents compared without rounding.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::CubeError;

/// Exponents like eta and sigma are kept as exact nonneg rationals so that
/// boundary conditions (p <= n^{eta/3} and so on) can be decided in integers.
pub type Frac = Ratio<u64>;

/// Parses "a/b" or a plain decimal such as "0.25" into an exact fraction.
pub fn parse_frac(s: &str) -> Result<Frac, CubeError> {
    let s = s.trim();
    let bad = || CubeError::BadParameter(format!("cannot parse fraction from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: u64 = num.trim().parse().map_err(|_| bad())?;
        let d: u64 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Frac::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int_part: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: u64 = frac.parse().map_err(|_| bad())?;
        let scale = 10u64.pow(frac.len() as u32);
        return Ok(Frac::from_integer(int_part) + Frac::new(digits, scale));
    }
    let n: u64 = s.parse().map_err(|_| bad())?;
    Ok(Frac::from_integer(n))
}

pub fn frac_to_f64(q: Frac) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// x^3 for x up to 2_642_245 (the largest cube below u64::MAX).
pub fn cube(x: u64) -> u64 {
    debug_assert!(x <= 2_642_245);
    x * x * x
}

/// Largest y with y^3 <= x.
pub fn cbrt_floor(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let mut y = (x as f64).cbrt().round() as u64;
    y = y.max(1);
    while y > 0 && cube_overflows(y, x) {
        y -= 1;
    }
    while !cube_overflows(y + 1, x) {
        y += 1;
    }
    y
}

fn cube_overflows(y: u64, x: u64) -> bool {
    y.checked_mul(y).and_then(|s| s.checked_mul(y)).map_or(true, |c| c > x)
}

/// Largest z with z^k <= x, computed exactly.
pub fn nth_root_floor(x: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1);
    x.nth_root(k)
}

/// Smallest z >= 0 with z^k >= x.
pub fn nth_root_ceil(x: &BigUint, k: u32) -> BigUint {
    if x.is_zero() {
        return BigUint::zero();
    }
    let r = x.nth_root(k);
    if r.pow(k) == *x {
        r
    } else {
        r + BigUint::one()
    }
}

/// Largest integer z with z <= base^q, for rational q = a/b >= 0.
/// Decided via z^b <= base^a, so exact on boundaries like 8^{1/3} = 2.
pub fn pow_frac_floor(base: u64, q: Frac) -> u64 {
    let a = *q.numer() as u32;
    let b = *q.denom() as u32;
    if a == 0 {
        return 1;
    }
    let big = BigUint::from(base).pow(a);
    nth_root_floor(&big, b)
        .to_u64()
        .expect("floor of a rational power exceeded u64")
}

/// Smallest n >= 1 with threshold <= n^q, for rational q = a/b > 0,
/// saturating at u64::MAX when the exact cutoff does not fit: a saturated
/// cutoff simply excludes every table index.
pub fn least_n_with_power_at_least(threshold: u64, q: Frac) -> u64 {
    assert!(!q.numer().is_zero(), "exponent must be positive");
    if threshold <= 1 {
        return 1;
    }
    let a = *q.numer() as u32;
    let b = *q.denom() as u32;
    // threshold <= n^{a/b}  <=>  threshold^b <= n^a  <=>  n >= ceil(threshold^{b/a}).
    let big = BigUint::from(threshold).pow(b);
    nth_root_ceil(&big, a).to_u64().unwrap_or(u64::MAX).max(1)
}

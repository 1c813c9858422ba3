//! The exponent constants behind the admissible-exponent bookkeeping.
//!
//! xi = (sqrt(2833) - 43) / 123 and its companions are quadratic surds, so
//! they are represented exactly and compared to rationals in integers; f64
//! views exist only for display and for floating-point consumers.

use std::cmp::Ordering;

/// (a + b * sqrt(2833)) / den with den > 0. The radicand is fixed: every
/// constant in this family lives in the same quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    a: i64,
    b: i64,
    den: i64,
}

pub const RADICAND: u64 = 2833;

impl Surd {
    pub fn new(a: i64, b: i64, den: i64) -> Self {
        assert!(den != 0);
        let (a, b, den) = if den < 0 { (-a, -b, -den) } else { (a, b, den) };
        let g = gcd(gcd(a.unsigned_abs(), b.unsigned_abs()), den.unsigned_abs()).max(1) as i64;
        Surd { a: a / g, b: b / g, den: den / g }
    }

    pub fn from_rational(p: i64, q: i64) -> Self {
        Surd::new(p, 0, q)
    }

    pub fn scale(&self, k: i64) -> Self {
        Surd::new(self.a * k, self.b * k, self.den)
    }

    /// Sign of a + b * sqrt(2833), decided by comparing a^2 with 2833 * b^2.
    fn numerator_sign(&self) -> Ordering {
        let (a, b) = (self.a as i128, self.b as i128);
        match (a.signum(), b.signum()) {
            (0, 0) => Ordering::Equal,
            (sa, sb) if sa >= 0 && sb >= 0 => Ordering::Greater,
            (sa, sb) if sa <= 0 && sb <= 0 => Ordering::Less,
            (1, -1) => (a * a).cmp(&(RADICAND as i128 * b * b)),
            _ => (RADICAND as i128 * b * b).cmp(&(a * a)),
        }
    }

    pub fn cmp_rational(&self, p: i64, q: i64) -> Ordering {
        assert!(q > 0);
        // self - p/q = ((a*q - p*den) + b*q * sqrt(2833)) / (den*q).
        let diff = Surd::new(self.a * q - p * self.den, self.b * q, self.den * q);
        diff.numerator_sign()
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (RADICAND as f64).sqrt()) / self.den as f64
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// The exponent gain in the smooth-variable correlation bounds.
pub fn xi() -> Surd {
    Surd::new(-43, 1, 123)
}

/// Decay exponent attached to the first auxiliary mean value.
pub fn nu1() -> Surd {
    Surd::from_rational(1, 2)
}

/// Decay exponent attached to the second auxiliary mean value: 3 * xi.
pub fn nu2() -> Surd {
    xi().scale(3)
}

pub fn xi_f64() -> f64 {
    xi().to_f64()
}

pub fn nu1_f64() -> f64 {
    0.5
}

pub fn nu2_f64() -> f64 {
    nu2().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_sits_strictly_between_its_documented_fences() {
        let x = xi();
        assert_eq!(x.cmp_rational(1, 12), Ordering::Less);
        assert_eq!(x.cmp_rational(1, 13), Ordering::Greater);
        assert_eq!(x.cmp_rational(0, 1), Ordering::Greater);
    }

    #[test]
    fn nu2_is_exactly_three_xi_and_below_one_quarter() {
        assert_eq!(nu2(), Surd::new(-43, 1, 41));
        assert_eq!(nu2().cmp_rational(1, 4), Ordering::Less);
        assert_eq!(nu2().cmp_rational(6, 25), Ordering::Greater);
    }

    #[test]
    fn surd_normalisation_and_signs() {
        assert_eq!(Surd::new(2, 0, 4), Surd::from_rational(1, 2));
        assert_eq!(Surd::new(-1, 0, -2), Surd::from_rational(1, 2));
        // sqrt(2833) is between 53 and 54.
        assert_eq!(Surd::new(0, 1, 1).cmp_rational(53, 1), Ordering::Greater);
        assert_eq!(Surd::new(0, 1, 1).cmp_rational(54, 1), Ordering::Less);
        assert_eq!(Surd::new(-53, 1, 1).cmp_rational(0, 1), Ordering::Greater);
        assert_eq!(Surd::new(-54, 1, 1).cmp_rational(0, 1), Ordering::Less);
        assert_eq!(Surd::from_rational(3, 7).cmp_rational(3, 7), Ordering::Equal);
    }

    #[test]
    fn float_views_agree_with_the_exact_values() {
        assert!((xi_f64() - 0.083_137_7).abs() < 1e-6);
        assert!((nu2_f64() - 3.0 * xi_f64()).abs() < 1e-15);
        assert_eq!(nu1_f64(), 0.5);
        assert!(nu1().is_rational());
        assert!(!xi().is_rational());
    }
}

use num_complex::Complex64;

/// S(q, a) = sum over r in [1, q] of e(a r^3 / q). The cube and the product
/// are reduced mod q in integers, so every term's angle is an exact rational
/// multiple of 2 pi.
pub fn gauss_sum(q: u64, a: i64) -> Complex64 {
    assert!(q >= 1, "modulus must be positive");
    let a_red = a.rem_euclid(q as i64) as u64;
    let mut sum = Complex64::new(0.0, 0.0);
    for r in 1..=q {
        let cube = mul_mod(mul_mod(r % q, r % q, q), r % q, q);
        let m = mul_mod(a_red, cube, q);
        sum += root_of_unity(m, q);
    }
    sum
}

fn mul_mod(x: u64, y: u64, q: u64) -> u64 {
    ((x as u128 * y as u128) % q as u128) as u64
}

fn root_of_unity(m: u64, q: u64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * (m as f64) / (q as f64))
}

/// All of S(q, 0), ..., S(q, q-1) at once. The histogram of cube residues
/// turns the family into one length-q discrete Fourier transform, quadratic
/// in q instead of cubic.
#[derive(Clone, Debug)]
pub struct GaussTable {
    q: u64,
    values: Vec<Complex64>,
}

impl GaussTable {
    pub fn build(q: u64) -> Self {
        assert!(q >= 1, "modulus must be positive");
        let qs = q as usize;
        let mut counts = vec![0u64; qs];
        for r in 1..=q {
            let cube = mul_mod(mul_mod(r % q, r % q, q), r % q, q);
            counts[cube as usize] += 1;
        }
        let roots: Vec<Complex64> = (0..q).map(|j| root_of_unity(j, q)).collect();
        let mut values = vec![Complex64::new(0.0, 0.0); qs];
        for (m, slot) in values.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (v, &cnt) in counts.iter().enumerate() {
                if cnt > 0 {
                    acc += (cnt as f64) * roots[(m * v) % qs];
                }
            }
            *slot = acc;
        }
        GaussTable { q, values }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn get(&self, a: i64) -> Complex64 {
        self.values[a.rem_euclid(self.q as i64) as usize]
    }
}

/// Inverse of x mod m when it exists.
pub fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (x % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_one_is_trivial() {
        for a in [-5i64, 0, 1, 7] {
            let s = gauss_sum(1, a);
            assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn frozen_small_values_vanish() {
        assert!(gauss_sum(2, 1).norm() < 1e-12);
        assert!(gauss_sum(3, 1).norm() < 1e-12);
    }

    #[test]
    fn cubes_are_a_bijection_mod_five() {
        // 3 does not divide phi(5), so r -> r^3 permutes residues and
        // S(5, a) collapses to the full geometric sum, which is 0.
        for a in 1..5 {
            assert!(gauss_sum(5, a).norm() < 1e-12, "a = {a}");
        }
    }

    #[test]
    fn table_matches_direct_sums() {
        for q in 1..=40u64 {
            let table = GaussTable::build(q);
            for a in 0..q as i64 {
                let direct = gauss_sum(q, a);
                assert!((table.get(a) - direct).norm() < 1e-9, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn negating_a_conjugates() {
        for q in [7u64, 9, 12, 25] {
            for a in 1..q as i64 {
                let plus = gauss_sum(q, a);
                let minus = gauss_sum(q, -a);
                assert!((plus.conj() - minus).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn inverse_works() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(1, 1), Some(0));
        for m in 2..50u64 {
            for x in 1..m {
                if let Some(inv) = mod_inverse(x, m) {
                    assert_eq!((x as u128 * inv as u128) % m as u128, 1);
                }
            }
        }
    }
}

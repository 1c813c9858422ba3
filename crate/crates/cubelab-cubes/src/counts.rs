//! Derived counting quantities over a built table: moments, level sets of
//! large values, the representable set, and the two-variable cube-gap count.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::{cbrt_floor, cube, nth_root_ceil, Frac};
use crate::error::CubeError;
use crate::rho::RhoTable;

/// #{(x, y) in [1, p]^2 : d * (x^3 - y^3) = h}, for d != 0.
pub fn c_h(d: i64, h: i64, p: u64) -> Result<u64, CubeError> {
    if d == 0 {
        return Err(CubeError::BadParameter("c_h needs d != 0".into()));
    }
    if h % d != 0 {
        return Ok(0);
    }
    let gap = (h / d) as i128;
    let mut total = 0u64;
    for x in 1..=p {
        let want = cube(x) as i128 - gap;
        if want < 1 {
            continue;
        }
        if want > cube(p) as i128 {
            continue;
        }
        let y = cbrt_floor(want as u64);
        if cube(y) as i128 == want && y >= 1 && y <= p {
            total += 1;
        }
    }
    Ok(total)
}

/// Sum over n <= bound of count(n)^k, exact.
pub fn moment_sum(table: &RhoTable, k: u32, bound: u64) -> BigUint {
    assert!(bound <= table.limit(), "moment bound beyond table limit");
    assert!(k >= 1);
    let mut total = BigUint::zero();
    let mut running = 0u128;
    for &c in &table.counts()[..=bound as usize] {
        if c == 0 {
            continue;
        }
        let term = (c as u128).pow(k);
        match running.checked_add(term) {
            Some(s) => running = s,
            None => {
                total += BigUint::from(running);
                running = term;
            }
        }
    }
    total + BigUint::from(running)
}

/// The n <= bound whose count strictly exceeds bound^theta, decided exactly:
/// count > bound^{a/b} iff count^b > bound^a.
pub struct ExceptionalSet {
    /// Smallest integer count that qualifies as exceptional.
    pub cutoff: u64,
    pub members: Vec<u64>,
}

impl ExceptionalSet {
    /// Total table mass carried by the exceptional members.
    pub fn mass(&self, table: &RhoTable) -> u64 {
        self.members.iter().map(|&n| table.get(n) as u64).sum()
    }
}

pub fn exceptional_set(table: &RhoTable, theta: Frac, bound: u64) -> ExceptionalSet {
    assert!(bound <= table.limit(), "exceptional bound beyond table limit");
    let a = *theta.numer() as u32;
    let b = *theta.denom() as u32;
    // Least c with c^b > bound^a, so the test becomes count >= cutoff.
    let power = BigUint::from(bound).pow(a) + 1u32;
    let cutoff = u64::try_from(nth_root_ceil(&power, b)).unwrap_or(u64::MAX);
    let members = (1..=bound)
        .filter(|&n| table.get(n) as u64 >= cutoff)
        .collect();
    ExceptionalSet { cutoff, members }
}

/// Ascending list of n <= bound with count(n) > 0.
pub fn representable_set(table: &RhoTable, bound: u64) -> Vec<u64> {
    assert!(bound <= table.limit(), "bound beyond table limit");
    (1..=bound).filter(|&n| table.get(n) > 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rho::RhoVariant;

    #[test]
    fn cube_gap_counts_match_hand_values() {
        // x^3 - y^3 = 7 has the single solution (2, 1).
        assert_eq!(c_h(1, 7, 10).unwrap(), 1);
        // Diagonal: every x in [1, p].
        assert_eq!(c_h(1, 0, 17).unwrap(), 17);
        assert_eq!(c_h(3, 0, 17).unwrap(), 17);
        // 3 does not divide 2: no solutions.
        assert_eq!(c_h(2, 3, 50).unwrap(), 0);
        // 2 * (x^3 - y^3) = 14 reduces to the first case.
        assert_eq!(c_h(2, 14, 10).unwrap(), 1);
        // 19^3 - 18^3 = 1027.
        assert_eq!(c_h(1, 1027, 19).unwrap(), 1);
        assert_eq!(c_h(1, 1027, 18).unwrap(), 0);
        assert_eq!(c_h(-1, -1027, 19).unwrap(), 1);
        assert!(c_h(0, 1, 5).is_err());
    }

    #[test]
    fn moments_match_direct_sums() {
        let t = RhoTable::build(400, RhoVariant::Plain).unwrap();
        let direct: u64 = t.counts()[..=400].iter().map(|&c| c as u64).sum();
        assert_eq!(moment_sum(&t, 1, 400), BigUint::from(direct));
        let square: u64 = t.counts()[..=400].iter().map(|&c| (c as u64).pow(2)).sum();
        assert_eq!(moment_sum(&t, 2, 400), BigUint::from(square));
    }

    #[test]
    fn exceptional_cutoff_is_exact_on_powers() {
        let t = RhoTable::build(1000, RhoVariant::Plain).unwrap();
        // bound = 1000, theta = 1/3: cutoff is the least c with c^3 > 1000, so 11.
        let e = exceptional_set(&t, Frac::new(1, 3), 1000);
        assert_eq!(e.cutoff, 11);
        assert!(e.members.is_empty());
        // theta = 0: every represented n with count >= 2 is exceptional.
        let e0 = exceptional_set(&t, Frac::new(0, 1), 1000);
        assert_eq!(e0.cutoff, 2);
        assert!(e0.members.contains(&10));
        assert!(!e0.members.contains(&3));
        assert_eq!(e0.mass(&t), {
            let mut s = 0;
            for n in 1..=1000u64 {
                if t.get(n) >= 2 {
                    s += t.get(n) as u64;
                }
            }
            s
        });
    }

    #[test]
    fn representables_start_as_expected() {
        let t = RhoTable::build(40, RhoVariant::Plain).unwrap();
        assert_eq!(representable_set(&t, 40), vec![3, 10, 17, 24, 29, 36]);
    }
}

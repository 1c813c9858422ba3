//! Largest-prime-factor sieve and Z-smooth membership sets.
//!
//! Throughout, 1 is smooth for every bound: it has no prime factor at all.

use crate::arith::{pow_frac_floor, Frac};
use crate::error::CubeError;

/// Entries above this need more memory than a desk run should take.
pub const DEFAULT_SIEVE_GUARD: u64 = 200_000_000;

/// lpf[n] = largest prime factor of n, with lpf[1] = 1 and lpf[0] = 0.
pub struct LargestPrimeFactors {
    lpf: Vec<u32>,
}

impl LargestPrimeFactors {
    pub fn sieve(limit: u64) -> Result<Self, CubeError> {
        Self::sieve_guarded(limit, DEFAULT_SIEVE_GUARD)
    }

    pub fn sieve_guarded(limit: u64, guard: u64) -> Result<Self, CubeError> {
        if limit + 1 > guard {
            return Err(CubeError::GuardExceeded { entries: limit + 1, guard });
        }
        if limit > u32::MAX as u64 {
            return Err(CubeError::BadParameter(format!("sieve limit {limit} exceeds u32")));
        }
        let n = limit as usize;
        let mut lpf = vec![0u32; n + 1];
        if n >= 1 {
            lpf[1] = 1;
        }
        // Ascending primes overwrite, so the final value is the largest factor.
        for p in 2..=n {
            if lpf[p] == 0 {
                let mut m = p;
                while m <= n {
                    lpf[m] = p as u32;
                    m += p;
                }
            }
        }
        Ok(LargestPrimeFactors { lpf })
    }

    pub fn limit(&self) -> u64 {
        (self.lpf.len() - 1) as u64
    }

    /// Largest prime factor; 1 for n = 1.
    pub fn get(&self, n: u64) -> u64 {
        self.lpf[n as usize] as u64
    }

    pub fn is_smooth(&self, n: u64, z: u64) -> bool {
        n >= 1 && self.get(n) <= z
    }
}

/// The set of n in [1, limit] whose prime factors all lie below the bound z,
/// stored as a bitmap.
pub struct SmoothSet {
    limit: u64,
    z: u64,
    bits: Vec<u64>,
}

impl SmoothSet {
    pub fn build(limit: u64, z: u64) -> Result<Self, CubeError> {
        let lpf = LargestPrimeFactors::sieve(limit)?;
        Ok(Self::from_sieve(&lpf, limit, z))
    }

    /// Membership bound z = floor(limit_base^q) decided exactly in integers.
    pub fn build_power(limit: u64, base: u64, q: Frac) -> Result<Self, CubeError> {
        Self::build(limit, pow_frac_floor(base, q))
    }

    pub fn from_sieve(lpf: &LargestPrimeFactors, limit: u64, z: u64) -> Self {
        assert!(limit <= lpf.limit());
        let words = (limit as usize + 64) / 64;
        let mut bits = vec![0u64; words];
        for n in 1..=limit {
            if lpf.get(n) <= z {
                bits[(n / 64) as usize] |= 1 << (n % 64);
            }
        }
        SmoothSet { limit, z, bits }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn bound(&self) -> u64 {
        self.z
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= 1 && n <= self.limit && self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Members in (lo, hi], ascending.
    pub fn members_in(&self, lo: u64, hi: u64) -> Vec<u64> {
        let hi = hi.min(self.limit);
        (lo + 1..=hi).filter(|&n| self.contains(n)).collect()
    }

    pub fn members(&self) -> Vec<u64> {
        self.members_in(0, self.limit)
    }
}

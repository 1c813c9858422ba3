//! Tables of r(n) = #{(x,y,z) ordered, x,y,z >= 1, x^3 + y^3 + z^3 = n},
//! together with the two restricted variants used downstream: one where the
//! prime factors of y and z must lie below n^{eta/3}, and a windowed form
//! where all three variables live in (sigma*P, P] and y, z are P^eta-smooth.

use rayon::prelude::*;

use crate::arith::{cbrt_floor, cube, Frac};
use crate::error::CubeError;
use crate::smooth::{LargestPrimeFactors, SmoothSet};

/// Largest table this crate will allocate without an explicit override.
pub const DEFAULT_TABLE_GUARD: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum RhoVariant {
    /// All ordered triples of positive cubes.
    Plain,
    /// y and z restricted to numbers whose prime factors are at most n^{eta/3}.
    Smooth { eta: Frac },
    /// x, y, z in (sigma*p, p] with y, z smooth below p^eta; n may still be
    /// anything up to the table limit, 3p^3 being the natural choice.
    Window { sigma: Frac, p: u64, eta: Frac },
}

pub struct RhoTable {
    variant: RhoVariant,
    counts: Vec<u32>,
}

impl RhoTable {
    pub fn build(limit: u64, variant: RhoVariant) -> Result<Self, CubeError> {
        let parts = rayon::current_num_threads().max(1);
        Self::build_partitioned(limit, variant, parts)
    }

    /// Splits the outermost loop into `parts` ranges and merges the partial
    /// tables by entrywise addition, so the result is independent of `parts`.
    pub fn build_partitioned(
        limit: u64,
        variant: RhoVariant,
        parts: usize,
    ) -> Result<Self, CubeError> {
        Self::build_guarded(limit, variant, parts, DEFAULT_TABLE_GUARD)
    }

    pub fn build_guarded(
        limit: u64,
        variant: RhoVariant,
        parts: usize,
        guard: u64,
    ) -> Result<Self, CubeError> {
        if limit + 1 > guard {
            return Err(CubeError::GuardExceeded { entries: limit + 1, guard });
        }
        let parts = parts.max(1);
        let partials: Vec<Vec<u32>> = match &variant {
            RhoVariant::Plain => build_plain(limit, parts),
            RhoVariant::Smooth { eta } => build_smooth(limit, *eta, parts)?,
            RhoVariant::Window { sigma, p, eta } => build_window(limit, *sigma, *p, *eta, parts)?,
        };
        let mut counts = vec![0u32; (limit + 1) as usize];
        for partial in partials {
            for (i, c) in partial.into_iter().enumerate() {
                if c != 0 {
                    counts[i] = counts[i]
                        .checked_add(c)
                        .ok_or(CubeError::CountOverflow { n: i as u64 })?;
                }
            }
        }
        Ok(RhoTable { variant, counts })
    }

    pub(crate) fn from_parts(variant: RhoVariant, counts: Vec<u32>) -> Self {
        RhoTable { variant, counts }
    }

    pub fn limit(&self) -> u64 {
        (self.counts.len() - 1) as u64
    }

    pub fn variant(&self) -> &RhoVariant {
        &self.variant
    }

    /// Count at n. Panics past the table limit: lookups beyond the built
    /// range are construction errors, not zeros.
    pub fn get(&self, n: u64) -> u32 {
        self.counts[n as usize]
    }

    pub fn try_get(&self, n: u64) -> Option<u32> {
        self.counts.get(n as usize).copied()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }
}

fn split_range(lo: u64, hi: u64, parts: usize) -> Vec<(u64, u64)> {
    if hi < lo {
        return vec![(1, 0); parts];
    }
    let len = hi - lo + 1;
    let parts = parts as u64;
    (0..parts)
        .map(|i| {
            let a = lo + i * len / parts;
            let end = lo + (i + 1) * len / parts;
            if end > a {
                (a, end - 1)
            } else {
                (1, 0)
            }
        })
        .collect()
}

fn add_count(counts: &mut [u32], n: u64, mult: u32) {
    let slot = &mut counts[n as usize];
    *slot = slot.checked_add(mult).expect("per-partition count overflow");
}

fn build_plain(limit: u64, parts: usize) -> Vec<Vec<u32>> {
    let size = (limit + 1) as usize;
    let xmax = cbrt_floor(limit.saturating_sub(2));
    split_range(1, xmax, parts)
        .into_par_iter()
        .map(|(xlo, xhi)| {
            let mut counts = vec![0u32; size];
            for x in xlo..=xhi {
                let x3 = cube(x);
                let mut y = x;
                while x3 + cube(y) + cube(y) <= limit {
                    let xy = x3 + cube(y);
                    let mut z = y;
                    loop {
                        let n = xy + cube(z);
                        if n > limit {
                            break;
                        }
                        let mult = if x == y && y == z {
                            1
                        } else if x == y || y == z {
                            3
                        } else {
                            6
                        };
                        add_count(&mut counts, n, mult);
                        z += 1;
                    }
                    y += 1;
                }
            }
            counts
        })
        .collect()
}

fn build_smooth(limit: u64, eta: Frac, parts: usize) -> Result<Vec<Vec<u32>>, CubeError> {
    if *eta.numer() == 0 {
        return Err(CubeError::BadParameter("smooth variant needs eta > 0".into()));
    }
    let size = (limit + 1) as usize;
    let ymax = cbrt_floor(limit.saturating_sub(2));
    let lpf = LargestPrimeFactors::sieve(ymax)?;
    // cutoff[v]: least n with lpf(v) <= n^{eta/3}; the smoothness condition
    // on a pair (y, z) becomes n >= max(cutoff[y], cutoff[z]).
    let third = eta / Frac::from_integer(3);
    let cutoff: Vec<u64> = (0..=ymax)
        .map(|v| {
            if v < 1 {
                0
            } else {
                crate::arith::least_n_with_power_at_least(lpf.get(v), third)
            }
        })
        .collect();
    let partials = split_range(1, ymax, parts)
        .into_par_iter()
        .map(|(ylo, yhi)| {
            let mut counts = vec![0u32; size];
            for y in ylo..=yhi {
                let y3 = cube(y);
                let mut z = y;
                while y3 + cube(z) + 1 <= limit {
                    let yz = y3 + cube(z);
                    let floor = cutoff[y as usize].max(cutoff[z as usize]);
                    let mult = if y == z { 1 } else { 2 };
                    let mut x = 1;
                    loop {
                        let n = yz + cube(x);
                        if n > limit {
                            break;
                        }
                        if n >= floor {
                            add_count(&mut counts, n, mult);
                        }
                        x += 1;
                    }
                    z += 1;
                }
            }
            counts
        })
        .collect();
    Ok(partials)
}

fn build_window(
    limit: u64,
    sigma: Frac,
    p: u64,
    eta: Frac,
    parts: usize,
) -> Result<Vec<Vec<u32>>, CubeError> {
    if sigma >= Frac::from_integer(1) {
        return Err(CubeError::BadParameter("window needs sigma < 1".into()));
    }
    if p == 0 {
        return Err(CubeError::BadParameter("window needs p >= 1".into()));
    }
    // Smallest x with x > sigma * p, exact for rational sigma.
    let xmin = (*sigma.numer() as u128 * p as u128 / *sigma.denom() as u128) as u64 + 1;
    let size = (limit + 1) as usize;
    let smooth = SmoothSet::build_power(p, p, eta)?;
    let pool: Vec<u64> = smooth.members_in(xmin - 1, p);
    if pool.is_empty() || xmin > p {
        return Ok(vec![vec![0u32; size]]);
    }
    let partials = split_range(0, pool.len() as u64 - 1, parts)
        .into_par_iter()
        .map(|(ilo, ihi)| {
            let mut counts = vec![0u32; size];
            for i in ilo..=ihi {
                let y = pool[i as usize];
                let y3 = cube(y);
                for &z in &pool[i as usize..] {
                    let yz = y3 + cube(z);
                    let mult = if y == z { 1 } else { 2 };
                    for x in xmin..=p {
                        let n = yz + cube(x);
                        if n > limit {
                            break;
                        }
                        add_count(&mut counts, n, mult);
                    }
                }
            }
            counts
        })
        .collect();
    Ok(partials)
}

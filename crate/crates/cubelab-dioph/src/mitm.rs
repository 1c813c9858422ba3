//! Meet-in-the-middle join over per-column value tables.
//!
//! Key = the r-vector of partial sums contributed by the left half, as exact
//! i128 components. The right half is scanned against the hash map; its
//! outermost column is chunked into work partitions, and chunk subtotals are
//! added in index order, so the result is independent of the partitioning.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::CountError;
use crate::system::ValueTable;

/// Product of table sizes over the chosen column subset.
pub fn product_size(tables: &[ValueTable], subset: &[usize]) -> f64 {
    subset.iter().map(|&j| tables[j].len() as f64).product()
}

/// Contiguous prefix split minimizing the larger of the two half products.
pub fn balanced_split(tables: &[ValueTable]) -> Vec<usize> {
    let mut best_k = 0;
    let mut best_cost = f64::INFINITY;
    for k in 0..=tables.len() {
        let left: f64 = tables[..k].iter().map(|t| t.len() as f64).product();
        let right: f64 = tables[k..].iter().map(|t| t.len() as f64).product();
        let cost = left.max(right);
        if cost < best_cost {
            best_cost = cost;
            best_k = k;
        }
    }
    (0..best_k).collect()
}

fn checked_term(coeff: i64, value: i64) -> Result<i128, CountError> {
    (coeff as i128)
        .checked_mul(value as i128)
        .ok_or_else(|| CountError::BadInstance("partial sum overflow".into()))
}

/// Enumerates the product of `tables[idx]` for idx in `cols`, calling the
/// visitor with the accumulated r-vector of sums and the multiplicity.
fn scan_product(
    coeffs: &[Vec<i64>],
    tables: &[ValueTable],
    cols: &[usize],
    acc: &mut Vec<i128>,
    mult: u64,
    visit: &mut dyn FnMut(&[i128], u64) -> Result<(), CountError>,
) -> Result<(), CountError> {
    match cols.split_first() {
        None => visit(acc, mult),
        Some((&j, rest)) => {
            for &(value, m) in &tables[j] {
                let mut next = acc.clone();
                for (i, slot) in next.iter_mut().enumerate() {
                    *slot = slot
                        .checked_add(checked_term(coeffs[j][i], value)?)
                        .ok_or_else(|| CountError::BadInstance("partial sum overflow".into()))?;
                }
                let m2 = mult
                    .checked_mul(m)
                    .ok_or_else(|| CountError::BadInstance("multiplicity overflow".into()))?;
                scan_product(coeffs, tables, rest, &mut next, m2, visit)?;
            }
            Ok(())
        }
    }
}

/// Running sum that spills into a BigUint only when u128 saturates.
#[derive(Default)]
struct Accumulator {
    spill: BigUint,
    running: u128,
}

impl Accumulator {
    fn add(&mut self, term: u128) {
        match self.running.checked_add(term) {
            Some(s) => self.running = s,
            None => {
                self.spill += BigUint::from(self.running);
                self.running = term;
            }
        }
    }

    fn finish(self) -> BigUint {
        self.spill + BigUint::from(self.running)
    }
}

/// Exact number of combined assignments with total equal to `target`,
/// joining the `left` columns (hashed) against the rest (scanned).
pub fn join_count(
    coeffs: &[Vec<i64>],
    tables: &[ValueTable],
    target: &[i64],
    left: &[usize],
    partitions: usize,
) -> Result<BigUint, CountError> {
    let rows = target.len();
    let right: Vec<usize> = (0..tables.len()).filter(|j| !left.contains(j)).collect();
    if left.len() + right.len() != tables.len() {
        return Err(CountError::BadInstance("split lists a column twice".into()));
    }

    let mut map: HashMap<Vec<i128>, u128> = HashMap::new();
    scan_product(coeffs, tables, left, &mut vec![0i128; rows], 1, &mut |key, m| {
        let slot = map.entry(key.to_vec()).or_insert(0);
        *slot = slot
            .checked_add(m as u128)
            .ok_or_else(|| CountError::BadInstance("hash multiplicity overflow".into()))?;
        Ok(())
    })?;

    // Probe side: need key = target - (right partial sums).
    let probe_one = |first_range: Option<(usize, std::ops::Range<usize>)>| -> Result<BigUint, CountError> {
        let mut acc = Accumulator::default();
        let mut lookup = |sums: &[i128], m: u64| -> Result<(), CountError> {
            let key: Vec<i128> = (0..rows)
                .map(|i| {
                    (target[i] as i128)
                        .checked_sub(sums[i])
                        .ok_or_else(|| CountError::BadInstance("partial sum overflow".into()))
                })
                .collect::<Result<_, _>>()?;
            if let Some(&lm) = map.get(&key) {
                let term = lm
                    .checked_mul(m as u128)
                    .ok_or_else(|| CountError::BadInstance("count term overflow".into()))?;
                acc.add(term);
            }
            Ok(())
        };
        match first_range {
            None => scan_product(coeffs, tables, &right, &mut vec![0i128; rows], 1, &mut lookup)?,
            Some((j0, range)) => {
                for &(value, m) in &tables[j0][range] {
                    let mut sums = vec![0i128; rows];
                    for (i, slot) in sums.iter_mut().enumerate() {
                        *slot = checked_term(coeffs[j0][i], value)?;
                    }
                    scan_product(coeffs, tables, &right[1..], &mut sums, m, &mut lookup)?;
                }
            }
        }
        Ok(acc.finish())
    };

    if right.is_empty() || partitions <= 1 {
        return probe_one(None);
    }
    let j0 = right[0];
    let len = tables[j0].len();
    let parts = partitions.min(len.max(1));
    let chunks: Vec<std::ops::Range<usize>> = (0..parts)
        .map(|i| (i * len / parts)..((i + 1) * len / parts))
        .collect();
    let partials: Vec<Result<BigUint, CountError>> = chunks
        .into_par_iter()
        .map(|range| probe_one(Some((j0, range))))
        .collect();
    let mut total = BigUint::zero();
    for p in partials {
        total += p?;
    }
    Ok(total)
}

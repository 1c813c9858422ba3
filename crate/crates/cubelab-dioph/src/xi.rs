//! The correlation sum: over every point n of the positive cone, the product
//! of table counts at the shifted form values Lambda_j(n) + h_j.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use cubelab_cubes::{RhoTable, RhoVariant, DEFAULT_TABLE_GUARD};
use cubelab_matrix::IntMatrix;

use crate::cone::{form_columns, form_value};
use crate::error::CountError;
use crate::report::CountReport;

/// max_j sum_i |a_ij|, the growth constant of the form system.
pub fn cone_coefficient_bound_i64(cols: &[Vec<i64>]) -> i64 {
    cols.iter()
        .map(|c| c.iter().map(|&a| a.abs()).sum::<i64>())
        .max()
        .unwrap_or(0)
}

/// Largest value any shifted form attains on the box [1, N]^r.
fn table_limit(cols: &[Vec<i64>], h: &[i64], n: u64) -> u64 {
    let mut worst = 0i64;
    for (col, &hj) in cols.iter().zip(h) {
        let mx: i64 = col.iter().map(|&a| if a > 0 { a * n as i64 } else { a }).sum();
        worst = worst.max(mx + hj);
    }
    worst.max(0) as u64
}

pub struct XiOptions {
    pub partitions: usize,
    pub table_guard: u64,
}

impl Default for XiOptions {
    fn default() -> Self {
        XiOptions {
            partitions: rayon::current_num_threads().max(1),
            table_guard: DEFAULT_TABLE_GUARD,
        }
    }
}

/// Sum over the cone [1, N]^r (all forms positive) of the product of
/// variant counts at Lambda_j(n) + h_j. A is r x 2r and highly non-singular;
/// shifts are nonnegative.
pub fn count_xi(
    a: &IntMatrix,
    h: &[i64],
    n: u64,
    variant: RhoVariant,
    opts: &XiOptions,
) -> Result<CountReport, CountError> {
    if a.cols() != 2 * a.rows() || a.rows() == 0 {
        return Err(CountError::BadInstance(format!(
            "form matrix is {}x{}, expected r x 2r",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_highly_nonsingular()? {
        return Err(CountError::BadInstance("form matrix is not highly non-singular".into()));
    }
    if h.len() != a.cols() {
        return Err(CountError::BadInstance("one shift per form is required".into()));
    }
    if h.iter().any(|&x| x < 0) {
        return Err(CountError::BadInstance("shifts must be nonnegative".into()));
    }
    let cols = form_columns(a)?;
    let partitions = opts.partitions.max(1);
    if n == 0 {
        let report = CountReport::new(BigUint::zero(), 0, "cone-direct".into(), partitions);
        return Ok(report);
    }
    let limit = table_limit(&cols, h, n);
    let table = RhoTable::build_guarded(limit, variant, partitions, opts.table_guard)?;

    // Partition on the first coordinate; each chunk walks its slab of the box.
    let r = a.rows();
    let chunks: Vec<(u64, u64)> = {
        let parts = partitions.min(n as usize).max(1);
        (0..parts as u64)
            .map(|i| (1 + i * n / parts as u64, (i + 1) * n / parts as u64))
            .collect()
    };
    let partials: Vec<Result<BigUint, CountError>> = chunks
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut total = BigUint::zero();
            let mut point = vec![1i64; r];
            if lo > hi {
                return Ok(total);
            }
            point[0] = lo as i64;
            loop {
                let mut product = BigUint::one();
                let mut live = true;
                for (col, &hj) in cols.iter().zip(h) {
                    let v = form_value(col, &point);
                    if v <= 0 {
                        live = false;
                        break;
                    }
                    let arg = (v + hj) as u64;
                    let c = table.try_get(arg).ok_or_else(|| {
                        CountError::BadInstance(format!("form value {arg} beyond table"))
                    })?;
                    if c == 0 {
                        live = false;
                        break;
                    }
                    product *= BigUint::from(c);
                }
                if live {
                    total += product;
                }
                let mut k = r;
                loop {
                    if k == 0 {
                        return Ok(total);
                    }
                    k -= 1;
                    let cap = if k == 0 { hi as i64 } else { n as i64 };
                    if point[k] < cap {
                        point[k] += 1;
                        break;
                    }
                    point[k] = if k == 0 { lo as i64 } else { 1 };
                }
            }
        })
        .collect();
    let mut total = BigUint::zero();
    for p in partials {
        total += p?;
    }
    Ok(CountReport::new(total, n, "cone-direct".into(), partitions))
}

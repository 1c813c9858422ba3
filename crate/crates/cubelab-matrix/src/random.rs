use num_bigint::BigInt;
use rand::Rng;

use crate::int_matrix::IntMatrix;

/// Uniform random matrix with entries in [lo, hi].
pub fn random_matrix<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
    rng: &mut R,
) -> IntMatrix {
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(lo..=hi)))
        .collect();
    IntMatrix::new(rows, cols, entries).unwrap()
}

/// Rejection-samples a matrix all of whose square minors are nonsingular.
/// None if no candidate is found within `tries` attempts.
pub fn random_all_minors<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
    tries: usize,
    rng: &mut R,
) -> Option<IntMatrix> {
    for _ in 0..tries {
        let m = random_matrix(rows, cols, lo, hi, rng);
        if m.all_square_minors_nonsingular() {
            return Some(m);
        }
    }
    None
}

/// Rejection-samples a highly non-singular r x s matrix.
pub fn random_hns<R: Rng + ?Sized>(
    r: usize,
    s: usize,
    lo: i64,
    hi: i64,
    tries: usize,
    rng: &mut R,
) -> Option<IntMatrix> {
    for _ in 0..tries {
        let m = random_matrix(r, s, lo, hi, rng);
        if m.is_highly_nonsingular() == Ok(true) {
            return Some(m);
        }
    }
    None
}

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::MatrixError;
use crate::int_matrix::IntMatrix;
use crate::rational_matrix::RationalMatrix;

/// Outcome of rewriting the correlation system A^T n = X as a homogeneous
/// system in the X_j alone.
#[derive(Clone, Debug)]
pub struct Section4Reduction {
    /// Integral r x 2r coefficient matrix, highly non-singular.
    pub b: IntMatrix,
    /// Least positive integer clearing the denominators of the inverse blocks.
    pub lambda: BigInt,
    /// Right-hand sides H_i = sum_j b_ij h_j.
    pub h_out: Vec<BigInt>,
}

/// With A = (A1, A2) highly non-singular and shifts h, forms the matrix
/// B = lambda ((A1^{-1})^T, -(A2^{-1})^T) with lambda minimal making B
/// integral, and H = B h.  Any n solving A^T n = X gives B X = 0, so
/// solution counts of the original system inject into those of B X = H
/// once the shifts are moved across.
pub fn section4_reduction(
    a: &IntMatrix,
    h: &[BigInt],
) -> Result<Section4Reduction, MatrixError> {
    let r = a.rows();
    if r == 0 || a.cols() != 2 * r {
        return Err(MatrixError::DimensionMismatch {
            expected: format!("{r}x{}", 2 * r),
            found: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    if h.len() != 2 * r {
        return Err(MatrixError::DimensionMismatch {
            expected: format!("{} shifts", 2 * r),
            found: format!("{}", h.len()),
        });
    }
    if !a.is_highly_nonsingular()? {
        return Err(MatrixError::NotHighlyNonSingular);
    }
    let rows: Vec<usize> = (0..r).collect();
    let left: Vec<usize> = (0..r).collect();
    let right: Vec<usize> = (r..2 * r).collect();
    let a1 = RationalMatrix::from_int(&a.submatrix(&rows, &left));
    let a2 = RationalMatrix::from_int(&a.submatrix(&rows, &right));
    let inv1t = transpose_rational(&a1.inverse()?);
    let inv2t = transpose_rational(&a2.inverse()?);

    let mut b_prime = RationalMatrix::zero(r, 2 * r);
    for i in 0..r {
        for j in 0..r {
            b_prime.set(i, j, inv1t.at(i, j).clone());
            b_prime.set(i, r + j, -inv2t.at(i, j).clone());
        }
    }
    let lambda = b_prime.denominator_lcm();
    let b = b_prime.scale_to_int(&lambda)?;
    debug_assert!(b.is_highly_nonsingular()?);
    let h_out = b.mul_vec(h)?;
    Ok(Section4Reduction { b, lambda, h_out })
}

/// Largest column sum of absolute values, an upper bound for the growth of
/// the linear forms on the cone: Lam_j(n) <= C_A N for n in [1, N]^r.
pub fn cone_coefficient_bound(a: &IntMatrix) -> BigInt {
    (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| a.at(i, j).abs()).sum::<BigInt>())
        .max()
        .unwrap_or_else(|| BigInt::from(0))
}

fn transpose_rational(m: &RationalMatrix) -> RationalMatrix {
    let mut t = RationalMatrix::zero(m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t.set(j, i, m.at(i, j).clone());
        }
    }
    t
}

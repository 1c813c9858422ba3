use num_traits::Zero;

use crate::error::MatrixError;
use crate::int_matrix::IntMatrix;
use crate::rational_matrix::RationalMatrix;

/// Both sides of the equivalence for an r x 2r matrix A = (A1, A2):
/// the left is the highly non-singular property itself, the right holds iff
/// A1 and A2 are nonsingular and every square minor of A1^{-1} A2 is nonzero.
/// The two agree for every integer A; tests exercise this exhaustively.
pub fn hns_block_equivalence(a: &IntMatrix) -> Result<(bool, bool), MatrixError> {
    let r = a.rows();
    if a.cols() != 2 * r || r == 0 {
        return Err(MatrixError::DimensionMismatch {
            expected: format!("{r}x{}", 2 * r),
            found: format!("{r}x{}", a.cols()),
        });
    }
    let lhs = a.is_highly_nonsingular()?;

    let rows: Vec<usize> = (0..r).collect();
    let left_cols: Vec<usize> = (0..r).collect();
    let right_cols: Vec<usize> = (r..2 * r).collect();
    let a1 = a.submatrix(&rows, &left_cols);
    let a2 = a.submatrix(&rows, &right_cols);
    let rhs = if a1.determinant()?.is_zero() || a2.determinant()?.is_zero() {
        false
    } else {
        let q1 = RationalMatrix::from_int(&a1).inverse()?;
        let q2 = RationalMatrix::from_int(&a2);
        q1.mul(&q2)?.all_square_minors_nonsingular()
    };
    Ok((lhs, rhs))
}

use crate::error::MatrixError;
use crate::int_matrix::IntMatrix;

/// Assembles blocks along the diagonal so that consecutive blocks share one
/// row: a block of format (r_l + 1) x s_l is sited with its top row on the
/// bottom row of its predecessor, and entries landing on the shared row add.
/// The result has format (1 + sum r_l) x (sum s_l).
pub fn build_linked_block(blocks: &[IntMatrix]) -> Result<IntMatrix, MatrixError> {
    if blocks.is_empty() {
        return Err(MatrixError::Empty);
    }
    for b in blocks {
        if b.rows() < 2 || b.cols() == 0 {
            return Err(MatrixError::DimensionMismatch {
                expected: "blocks of format (r+1) x s with r >= 1, s >= 1".into(),
                found: format!("{}x{}", b.rows(), b.cols()),
            });
        }
    }
    let total_rows = 1 + blocks.iter().map(|b| b.rows() - 1).sum::<usize>();
    let total_cols = blocks.iter().map(|b| b.cols()).sum::<usize>();
    let mut out = IntMatrix::zero(total_rows, total_cols);
    let mut row_off = 0;
    let mut col_off = 0;
    for b in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                out.add_at(row_off + r, col_off + c, b.at(r, c));
            }
        }
        row_off += b.rows() - 1;
        col_off += b.cols();
    }
    Ok(out)
}

/// The identity of order k with a zero row appended below: format (k+1) x k.
pub fn identity_star(k: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(k + 1, k);
    for i in 0..k {
        m.set(i, i, 1.into());
    }
    m
}

/// The identity of order k with zero rows added above and below:
/// format (k+2) x k.  For k = 0 this is the empty 2 x 0 matrix.
pub fn identity_plus(k: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(k + 2, k);
    for i in 0..k {
        m.set(i + 1, i, 1.into());
    }
    m
}

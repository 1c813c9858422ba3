use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::AuxError;
use crate::int_matrix::IntMatrix;
use crate::linked::{build_linked_block, identity_plus, identity_star};

/// Shape parameters (n, r, t)_omega of an auxiliary matrix.
///
/// The matrix has R = n(r-1) + t rows and S = 2R - 1 + omega columns and is
/// assembled from n+1 generating blocks: M_0 of format t x (t+omega) and
/// M_1, .., M_n of format r x r.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AuxShape {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub omega: usize,
}

impl AuxShape {
    pub fn new(n: usize, r: usize, t: usize, omega: usize) -> Result<Self, AuxError> {
        let s = AuxShape { n, r, t, omega };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<(), AuxError> {
        if self.r < 2 {
            return Err(AuxError::BadShape(format!("r = {} < 2", self.r)));
        }
        if self.t < 2 || self.t > self.r {
            return Err(AuxError::BadShape(format!(
                "t = {} outside [2, r = {}]",
                self.t, self.r
            )));
        }
        if self.omega > 1 {
            return Err(AuxError::BadShape(format!("omega = {} not 0 or 1", self.omega)));
        }
        Ok(())
    }

    /// Row count R = n(r-1) + t.
    pub fn rows(&self) -> usize {
        self.n * (self.r - 1) + self.t
    }

    /// Column count S = 2R - 1 + omega.
    pub fn cols(&self) -> usize {
        2 * self.rows() - 1 + self.omega
    }

    /// First row of block l (blocks share one row with their predecessor).
    fn row_start(&self, l: usize) -> usize {
        if l == 0 {
            0
        } else {
            self.t - 1 + (l - 1) * (self.r - 1)
        }
    }

    fn block_rows(&self, l: usize) -> usize {
        if l == 0 {
            self.t
        } else {
            self.r
        }
    }

    /// First column of block l within the left (diagonal) part.
    fn a_col_start(&self, l: usize) -> usize {
        if l == 0 {
            0
        } else {
            self.t + (l - 1) * (self.r - 1)
        }
    }

    fn a_block_cols(&self, l: usize) -> usize {
        if l == 0 {
            self.t
        } else {
            self.r - 1
        }
    }

    /// First column of block l within the right part, counted from column R.
    fn b_col_start(&self, l: usize) -> usize {
        let base = self.rows();
        if l == 0 {
            base
        } else {
            base + self.t - 1 + self.omega + (l - 1) * (self.r - 1)
        }
    }

    fn b_block_cols(&self, l: usize) -> usize {
        if l == 0 {
            self.t - 1 + self.omega
        } else {
            self.r - 1
        }
    }
}

/// A validated auxiliary matrix together with its generating data.
#[derive(Clone, Debug)]
pub struct AuxiliaryMatrix {
    shape: AuxShape,
    matrix: IntMatrix,
    lambdas: Vec<BigInt>,
    blocks: Vec<IntMatrix>,
}

impl AuxiliaryMatrix {
    pub fn shape(&self) -> AuxShape {
        self.shape
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn lambdas(&self) -> &[BigInt] {
        &self.lambdas
    }

    pub fn blocks(&self) -> &[IntMatrix] {
        &self.blocks
    }
}

/// Assembles the auxiliary matrix of the given shape from diagonal scalars
/// `lambdas` (one per block) and generating blocks `ms`.
///
/// Block l contributes a left part (lambda_l I^*_{t-1} | m_l) for l = 0, or
/// (lambda_l I^+_{r-2} | m_l) for l >= 1, where m_l is the first column of
/// M_l, and a right part consisting of the remaining columns of M_l.  Left
/// parts are linked down the diagonal to form a square block A, right parts
/// likewise form B, and the result is (A | B).
pub fn build_auxiliary(
    shape: AuxShape,
    lambdas: &[BigInt],
    ms: &[IntMatrix],
) -> Result<AuxiliaryMatrix, AuxError> {
    shape.check()?;
    if lambdas.len() != shape.n + 1 || ms.len() != shape.n + 1 {
        return Err(AuxError::BlockCount {
            expected: shape.n + 1,
            found: if lambdas.len() != shape.n + 1 {
                lambdas.len()
            } else {
                ms.len()
            },
        });
    }
    for (l, lam) in lambdas.iter().enumerate() {
        if lam.is_zero() {
            return Err(AuxError::ZeroLambda { block: l });
        }
    }
    for (l, m) in ms.iter().enumerate() {
        let expected = if l == 0 {
            (shape.t, shape.t + shape.omega)
        } else {
            (shape.r, shape.r)
        };
        if m.format() != expected {
            return Err(AuxError::BlockFormat {
                block: l,
                expected,
                found: m.format(),
            });
        }
    }
    for (l, m) in ms.iter().enumerate() {
        if !m.all_square_minors_nonsingular() {
            return Err(AuxError::SingularBlockMinor { block: l });
        }
    }

    let mut a_parts = Vec::with_capacity(shape.n + 1);
    let mut b_parts = Vec::with_capacity(shape.n + 1);
    for (l, m) in ms.iter().enumerate() {
        let rows: Vec<usize> = (0..m.rows()).collect();
        let m_col = m.submatrix(&rows, &[0]);
        let rest: Vec<usize> = (1..m.cols()).collect();
        let b_part = m.submatrix(&rows, &rest);
        let ident = if l == 0 {
            identity_star(shape.t - 1)
        } else {
            identity_plus(shape.r - 2)
        };
        let a_part = ident.scale(&lambdas[l]).hconcat(&m_col)?;
        a_parts.push(a_part);
        b_parts.push(b_part);
    }
    let a = build_linked_block(&a_parts)?;
    let b = build_linked_block(&b_parts)?;
    let matrix = a.hconcat(&b)?;
    debug_assert_eq!(matrix.format(), (shape.rows(), shape.cols()));
    Ok(AuxiliaryMatrix {
        shape,
        matrix,
        lambdas: lambdas.to_vec(),
        blocks: ms.to_vec(),
    })
}

/// Checks that `m` is an auxiliary matrix of the given shape, recovering the
/// diagonal scalars and generating blocks from their forced positions and
/// comparing against a rebuild.  The first violated condition is reported.
///
/// For r = 2 the off-diagonal blocks carry no scalar entry, so lambda_l is
/// reported as 1 for l >= 1 in that case.
pub fn validate_auxiliary(m: &IntMatrix, shape: AuxShape) -> Result<AuxiliaryMatrix, AuxError> {
    shape.check()?;
    let expected = (shape.rows(), shape.cols());
    if m.format() != expected {
        return Err(AuxError::FormatMismatch {
            expected,
            found: m.format(),
        });
    }

    let mut lambdas = Vec::with_capacity(shape.n + 1);
    let mut blocks = Vec::with_capacity(shape.n + 1);
    for l in 0..=shape.n {
        let lam = if l == 0 {
            m.at(0, 0).clone()
        } else if shape.r >= 3 {
            // The scaled identity inside block l has its first entry one row
            // below the shared row.
            m.at(shape.row_start(l) + 1, shape.a_col_start(l)).clone()
        } else {
            BigInt::one()
        };
        if lam.is_zero() {
            return Err(AuxError::ZeroLambda { block: l });
        }
        lambdas.push(lam);

        let rows: Vec<usize> =
            (shape.row_start(l)..shape.row_start(l) + shape.block_rows(l)).collect();
        let m_col_idx = shape.a_col_start(l) + shape.a_block_cols(l) - 1;
        let m_col = m.submatrix(&rows, &[m_col_idx]);
        let b_cols: Vec<usize> =
            (shape.b_col_start(l)..shape.b_col_start(l) + shape.b_block_cols(l)).collect();
        let b_part = m.submatrix(&rows, &b_cols);
        blocks.push(m_col.hconcat(&b_part)?);
    }

    let rebuilt = build_auxiliary(shape, &lambdas, &blocks)?;
    if rebuilt.matrix != *m {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.at(r, c) != rebuilt.matrix.at(r, c) {
                    return Err(AuxError::StructureMismatch { row: r, col: c });
                }
            }
        }
    }
    Ok(AuxiliaryMatrix {
        shape,
        matrix: m.clone(),
        lambdas,
        blocks,
    })
}

/// Deletes the listed rows and columns (0-indexed) from a validated auxiliary
/// matrix and checks the outcome against `claimed`.  Supported reduction
/// patterns (leading row and column, whole leading blocks with their right
/// parts) land on a smaller auxiliary shape; anything else fails validation.
pub fn aux_deletion(
    aux: &AuxiliaryMatrix,
    rows: &[usize],
    cols: &[usize],
    claimed: AuxShape,
) -> Result<AuxiliaryMatrix, AuxError> {
    let trimmed = aux.matrix().delete_rows_cols(rows, cols);
    validate_auxiliary(&trimmed, claimed)
}

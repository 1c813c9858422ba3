use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::auxiliary::{validate_auxiliary, AuxShape};
use crate::error::{AdjError, MatrixError};
use crate::int_matrix::IntMatrix;
use crate::rational_matrix::RationalMatrix;

/// Column-permutation search is only attempted up to this many columns.
pub const SEARCH_COLUMN_LIMIT: usize = 10;

/// An adjuvant matrix of type (n, r): format (R+1) x (2R+2) with R = n(r-1),
/// carrying two stored column assignments that witness the defining property.
///
/// The forward witness sends columns {0..R} and {R+2..2R+1} to the positions
/// of an auxiliary matrix of type (n-1, r, r)_0; the flipped witness does the
/// same for the columns {1..R+1} and {R+2..2R+1} with every column reversed.
/// `validate` replays both assignments, so a stored instance never asserts
/// more than can be checked.
///
/// Instances built here additionally keep two normalisations: column 0 has
/// its only nonzero entry in the first row, and column R+1 has its only
/// nonzero entry in the last row.  The doubling construction consumes and
/// preserves both, which is what lets it run to any depth without a
/// permutation search.
#[derive(Clone, Debug)]
pub struct AdjuvantMatrix {
    n: usize,
    r: usize,
    matrix: IntMatrix,
    fwd: Vec<usize>,
    flip: Vec<usize>,
}

impl AdjuvantMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// R = n(r-1).
    pub fn half_rank(&self) -> usize {
        self.n * (self.r - 1)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn forward_witness(&self) -> &[usize] {
        &self.fwd
    }

    pub fn flipped_witness(&self) -> &[usize] {
        &self.flip
    }

    /// Assembles the auxiliary matrix named by one of the stored witnesses.
    pub fn assemble(&self, flipped: bool) -> IntMatrix {
        let rr = self.half_rank();
        let witness = if flipped { &self.flip } else { &self.fwd };
        let rows = rr + 1;
        let mut out = IntMatrix::zero(rows, witness.len());
        for (pos, &j) in witness.iter().enumerate() {
            for i in 0..rows {
                let v = if flipped {
                    self.matrix.at(rows - 1 - i, j).clone()
                } else {
                    self.matrix.at(i, j).clone()
                };
                out.set(i, pos, v);
            }
        }
        out
    }

    fn check_witness_domains(&self) -> Result<(), AdjError> {
        let rr = self.half_rank();
        let len = 2 * rr + 1;
        if self.fwd.len() != len || self.flip.len() != len {
            return Err(AdjError::BadType(format!(
                "witness length {} or {}, expected {len}",
                self.fwd.len(),
                self.flip.len()
            )));
        }
        let is_perm_of = |slice: &[usize], lo: usize, hi: usize| {
            let mut seen = vec![false; hi + 1 - lo];
            slice.len() == hi + 1 - lo
                && slice.iter().all(|&j| {
                    j >= lo && j <= hi && !std::mem::replace(&mut seen[j - lo], true)
                })
        };
        let ok = is_perm_of(&self.fwd[..=rr], 0, rr)
            && is_perm_of(&self.fwd[rr + 1..], rr + 2, 2 * rr + 1)
            && is_perm_of(&self.flip[..=rr], 1, rr + 1)
            && is_perm_of(&self.flip[rr + 1..], rr + 2, 2 * rr + 1);
        if !ok {
            return Err(AdjError::BadType(
                "witness is not a permutation of the required column sets".into(),
            ));
        }
        Ok(())
    }

    /// Replays both stored witnesses against the auxiliary validator.
    pub fn validate(&self) -> Result<(), AdjError> {
        if self.n == 0 || self.r < 2 {
            return Err(AdjError::BadType(format!(
                "type ({}, {}) needs n >= 1, r >= 2",
                self.n, self.r
            )));
        }
        let rr = self.half_rank();
        let expected = (rr + 1, 2 * rr + 2);
        if self.matrix.format() != expected {
            return Err(AdjError::FormatMismatch {
                expected,
                found: self.matrix.format(),
            });
        }
        self.check_witness_domains()?;
        let shape = AuxShape::new(self.n - 1, self.r, self.r, 0)
            .map_err(|e| AdjError::Witness {
                flipped: false,
                source: e,
            })?;
        for flipped in [false, true] {
            let assembled = self.assemble(flipped);
            validate_auxiliary(&assembled, shape)
                .map_err(|source| AdjError::Witness { flipped, source })?;
        }
        Ok(())
    }

    /// Checks the two normalisations the doubling construction relies on:
    /// column 0 is supported on the first row, column R+1 on the last.
    pub fn check_normalised(&self) -> Result<(), AdjError> {
        let rr = self.half_rank();
        for i in 1..=rr {
            if !self.matrix.at(i, 0).is_zero() {
                return Err(AdjError::NotNormalised(
                    "column 0 has entries below the first row".into(),
                ));
            }
        }
        if self.matrix.at(0, 0).is_zero() {
            return Err(AdjError::NotNormalised("column 0 is zero".into()));
        }
        for i in 0..rr {
            if !self.matrix.at(i, rr + 1).is_zero() {
                return Err(AdjError::NotNormalised(format!(
                    "column {} has entries above the last row",
                    rr + 1
                )));
            }
        }
        if self.matrix.at(rr, rr + 1).is_zero() {
            return Err(AdjError::NotNormalised(format!("column {} is zero", rr + 1)));
        }
        Ok(())
    }

    /// Builds a type (1, r) adjuvant from a scalar and an r x r matrix all of
    /// whose square minors are nonsingular.  Columns 0 and r carry the scalar
    /// in the first and last row; the identity columns and the columns of `m`
    /// fill the rest.
    pub fn base(lambda: &BigInt, m: &IntMatrix) -> Result<AdjuvantMatrix, AdjError> {
        let r = m.rows();
        if r < 2 || m.cols() != r {
            return Err(AdjError::BadType(format!(
                "generator must be square of order >= 2, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if lambda.is_zero() {
            return Err(AdjError::BadType("zero scalar".into()));
        }
        if !m.all_square_minors_nonsingular() {
            return Err(AdjError::BadType(
                "generator has a singular square minor".into(),
            ));
        }
        // R = r - 1; the matrix is r x 2r.
        let mut cols: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); r]; 2 * r];
        cols[0][0] = lambda.clone();
        cols[r][r - 1] = lambda.clone();
        for p in 1..=r - 2 {
            cols[p][p] = lambda.clone();
        }
        for i in 0..r {
            cols[r - 1][i] = m.at(i, 0).clone();
        }
        for k in 1..r {
            for i in 0..r {
                cols[r + k][i] = m.at(i, k).clone();
            }
        }
        let matrix = columns_to_matrix(r, &cols);

        let mut fwd = Vec::with_capacity(2 * r - 1);
        fwd.extend(0..r);
        fwd.extend(r + 1..2 * r);
        let mut flip = Vec::with_capacity(2 * r - 1);
        flip.push(r);
        for p in 1..=r - 2 {
            flip.push(r - 1 - p);
        }
        flip.push(r - 1);
        flip.extend(r + 1..2 * r);

        let adj = AdjuvantMatrix {
            n: 1,
            r,
            matrix,
            fwd,
            flip,
        };
        adj.validate()?;
        adj.check_normalised()?;
        Ok(adj)
    }

    /// Doubles the type: from a normalised type (n, r) instance, produces a
    /// normalised type (2n, r) instance whose columns are the input columns
    /// padded with zeros below, together with the flipped input columns
    /// padded with zeros above.
    pub fn complify(&self) -> Result<AdjuvantMatrix, AdjError> {
        self.validate()?;
        self.check_normalised()?;
        let rr = self.half_rank();
        let rows_in = rr + 1;
        let rows_out = 2 * rr + 1;
        let cols_out = 4 * rr + 2;

        // Column table: j <= R top copies, R+1..2R+1 flipped bottom copies in
        // reverse, then the same pattern for the right-hand columns.
        let mut cols: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); rows_out]; cols_out];
        let top = |dst: &mut Vec<BigInt>, src: usize, m: &IntMatrix| {
            for i in 0..rows_in {
                dst[i] = m.at(i, src).clone();
            }
        };
        let bottom_flipped = |dst: &mut Vec<BigInt>, src: usize, m: &IntMatrix| {
            for i in 0..rows_in {
                dst[rr + i] = m.at(rows_in - 1 - i, src).clone();
            }
        };
        for j in 0..=rr {
            top(&mut cols[j], j, &self.matrix);
        }
        for j in rr + 1..=2 * rr + 1 {
            bottom_flipped(&mut cols[j], 2 * rr + 1 - j, &self.matrix);
        }
        for j in 2 * rr + 2..=3 * rr + 1 {
            top(&mut cols[j], j - rr, &self.matrix);
        }
        for j in 3 * rr + 2..=4 * rr + 1 {
            bottom_flipped(&mut cols[j], 5 * rr + 3 - j, &self.matrix);
        }
        let matrix = columns_to_matrix(rows_out, &cols);

        // Witness transport.  Positions 0..2R cover the left part of the
        // doubled auxiliary, 2R+1..4R the right part.
        let mut fwd = Vec::with_capacity(4 * rr + 1);
        let mut flip = Vec::with_capacity(4 * rr + 1);
        for p in 0..=rr {
            fwd.push(self.fwd[p]);
            flip.push(2 * rr + 1 - self.fwd[p]);
        }
        for p in rr + 1..=2 * rr {
            fwd.push(2 * rr + 1 - self.flip[p - rr]);
            flip.push(self.flip[p - rr]);
        }
        for q in 0..rr {
            fwd.push(rr + self.fwd[rr + 1 + q]);
            flip.push(5 * rr + 3 - self.fwd[rr + 1 + q]);
        }
        for q in rr..2 * rr {
            fwd.push(5 * rr + 3 - self.flip[q + 1]);
            flip.push(rr + self.flip[q + 1]);
        }

        let adj = AdjuvantMatrix {
            n: 2 * self.n,
            r: self.r,
            matrix,
            fwd,
            flip,
        };
        adj.validate()?;
        adj.check_normalised()?;
        Ok(adj)
    }

    /// Attempts to certify an arbitrary matrix as adjuvant of type (n, r) by
    /// searching over column assignments.  Only feasible for narrow inputs;
    /// wider matrices without stored witnesses are rejected as
    /// non-constructive rather than guessed at.
    pub fn search(matrix: &IntMatrix, n: usize, r: usize) -> Result<AdjuvantMatrix, AdjError> {
        if n == 0 || r < 2 {
            return Err(AdjError::BadType(format!(
                "type ({n}, {r}) needs n >= 1, r >= 2"
            )));
        }
        let rr = n * (r - 1);
        let expected = (rr + 1, 2 * rr + 2);
        if matrix.format() != expected {
            return Err(AdjError::FormatMismatch {
                expected,
                found: matrix.format(),
            });
        }
        if matrix.cols() > SEARCH_COLUMN_LIMIT {
            return Err(AdjError::NonConstructive {
                cols: matrix.cols(),
                limit: SEARCH_COLUMN_LIMIT,
            });
        }
        let shape = AuxShape::new(n - 1, r, r, 0).map_err(|e| AdjError::Witness {
            flipped: false,
            source: e,
        })?;

        let find = |flipped: bool| -> Option<Vec<usize>> {
            let a_domain: Vec<usize> = if flipped {
                (1..=rr + 1).collect()
            } else {
                (0..=rr).collect()
            };
            let b_domain: Vec<usize> = (rr + 2..=2 * rr + 1).collect();
            let mut found = None;
            for_each_permutation(&a_domain, &mut |a_perm| {
                for_each_permutation(&b_domain, &mut |b_perm| {
                    let mut witness = a_perm.to_vec();
                    witness.extend_from_slice(b_perm);
                    let candidate = AdjuvantMatrix {
                        n,
                        r,
                        matrix: matrix.clone(),
                        fwd: witness.clone(),
                        flip: witness.clone(),
                    };
                    let assembled = candidate.assemble(flipped);
                    if validate_auxiliary(&assembled, shape).is_ok() {
                        found = Some(witness);
                        return false;
                    }
                    true
                });
                found.is_none()
            });
            found
        };

        let fwd = find(false).ok_or(AdjError::NoAssignment)?;
        let flip = find(true).ok_or(AdjError::NoAssignment)?;
        let adj = AdjuvantMatrix {
            n,
            r,
            matrix: matrix.clone(),
            fwd,
            flip,
        };
        adj.validate()?;
        Ok(adj)
    }

    /// Reconstructs an instance from raw parts, replaying validation.
    pub fn from_parts(
        n: usize,
        r: usize,
        matrix: IntMatrix,
        fwd: Vec<usize>,
        flip: Vec<usize>,
    ) -> Result<AdjuvantMatrix, AdjError> {
        let adj = AdjuvantMatrix {
            n,
            r,
            matrix,
            fwd,
            flip,
        };
        adj.validate()?;
        Ok(adj)
    }
}

/// Builds a type (2, r) adjuvant from a highly non-singular r x 2r matrix
/// C = (A, B).  With D = |det A| and T = D A^{-1} B (which is integral), the
/// output columns are D times the identity columns, the first column u of T
/// and its flip, and the remaining columns of T and their flips, arranged so
/// that both witnesses hold and the normalisations are met.
pub fn adjuvant_from_hns(c: &IntMatrix) -> Result<AdjuvantMatrix, AdjError> {
    let r = c.rows();
    if r < 2 || c.cols() != 2 * r {
        return Err(AdjError::FormatMismatch {
            expected: (r.max(2), 2 * r.max(2)),
            found: c.format(),
        });
    }
    if !c.is_highly_nonsingular().map_err(AdjError::Matrix)? {
        return Err(AdjError::BadType("input is not highly non-singular".into()));
    }
    let rows: Vec<usize> = (0..r).collect();
    let left: Vec<usize> = (0..r).collect();
    let right: Vec<usize> = (r..2 * r).collect();
    let a = c.submatrix(&rows, &left);
    let b = c.submatrix(&rows, &right);
    let delta = a.determinant().map_err(AdjError::Matrix)?.abs();
    let t = RationalMatrix::from_int(&a)
        .inverse()
        .map_err(AdjError::Matrix)?
        .mul(&RationalMatrix::from_int(&b))
        .map_err(AdjError::Matrix)?
        .scale_to_int(&delta)
        .map_err(AdjError::Matrix)?;

    let rows_out = 2 * r - 1;
    let cols_out = 4 * r - 2;
    let mut cols: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); rows_out]; cols_out];
    for j in 0..=2 * r - 3 {
        if j != r - 1 {
            cols[j][j] = delta.clone();
        }
    }
    for i in 0..r {
        // u and its flip share the middle row r-1.
        cols[r - 1][i] = t.at(i, 0).clone();
        cols[2 * r - 2][r - 1 + i] = t.at(r - 1 - i, 0).clone();
    }
    cols[2 * r - 1][2 * r - 2] = delta.clone();
    for j in 2 * r..=3 * r - 2 {
        let k = j - 2 * r + 1;
        for i in 0..r {
            cols[j][i] = t.at(i, k).clone();
        }
    }
    for j in 3 * r - 1..=4 * r - 3 {
        let k = 4 * r - 2 - j;
        for i in 0..r {
            cols[j][r - 1 + i] = t.at(r - 1 - i, k).clone();
        }
    }
    let matrix = columns_to_matrix(rows_out, &cols);

    let mut fwd: Vec<usize> = (0..=2 * r - 2).collect();
    fwd.extend(2 * r..=3 * r - 2);
    fwd.extend((3 * r - 1..=4 * r - 3).rev());
    let mut flip = Vec::with_capacity(4 * r - 3);
    flip.push(2 * r - 1);
    for p in 1..=r - 2 {
        flip.push(2 * r - 2 - p);
    }
    flip.push(2 * r - 2);
    for p in r..=2 * r - 3 {
        flip.push(2 * r - 2 - p);
    }
    flip.push(r - 1);
    flip.extend((3 * r - 1..=4 * r - 3).rev());
    flip.extend(2 * r..=3 * r - 2);

    let adj = AdjuvantMatrix {
        n: 2,
        r,
        matrix,
        fwd,
        flip,
    };
    adj.validate()?;
    adj.check_normalised()?;
    Ok(adj)
}

fn columns_to_matrix(rows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
    let mut m = IntMatrix::zero(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for i in 0..rows {
            m.set(i, j, col[i].clone());
        }
    }
    m
}

/// Visits every permutation of `items`; the visitor returns false to stop.
fn for_each_permutation(items: &[usize], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut buf = items.to_vec();
    permute_rec(&mut buf, 0, visit)
}

fn permute_rec(buf: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == buf.len() {
        return visit(buf);
    }
    for i in k..buf.len() {
        buf.swap(k, i);
        if !permute_rec(buf, k + 1, visit) {
            buf.swap(k, i);
            return false;
        }
        buf.swap(k, i);
    }
    true
}

/// Lemma-style equivalence helper shared with the reduction code: C written
/// as (A1, A2) is highly non-singular iff A1 and A2 are nonsingular and all
/// square minors of A1^{-1} A2 are nonsingular.
pub fn inverse_product_minors(c: &IntMatrix) -> Result<RationalMatrix, MatrixError> {
    let r = c.rows();
    if c.cols() != 2 * r {
        return Err(MatrixError::DimensionMismatch {
            expected: format!("{r}x{}", 2 * r),
            found: format!("{r}x{}", c.cols()),
        });
    }
    let rows: Vec<usize> = (0..r).collect();
    let left: Vec<usize> = (0..r).collect();
    let right: Vec<usize> = (r..2 * r).collect();
    let a1 = RationalMatrix::from_int(&c.submatrix(&rows, &left));
    let a2 = RationalMatrix::from_int(&c.submatrix(&rows, &right));
    a1.inverse()?.mul(&a2)
}

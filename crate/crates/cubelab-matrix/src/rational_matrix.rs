use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::MatrixError;
use crate::int_matrix::{for_each_subset, IntMatrix};

/// Dense matrix over the rationals, row-major.  Used wherever exact inverses
/// are needed; nothing here ever rounds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<BigRational>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{}", entries.len()),
            });
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let entries = (0..m.rows())
            .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
            .map(|(r, c)| BigRational::from_integer(m.at(r, c).clone()))
            .collect();
        RationalMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.at(r, c).clone());
            }
        }
        RationalMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut m = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = a * other.at(k, c);
                    let idx = r * m.cols + c;
                    m.entries[idx] += v;
                }
            }
        }
        Ok(m)
    }

    /// Gaussian elimination determinant; exact over the rationals.
    pub fn determinant(&self) -> Result<BigRational, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|r| (0..n).map(|c| self.at(r, c).clone()).collect())
            .collect();
        let mut det = BigRational::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        det = -det;
                    }
                    None => return Ok(BigRational::zero()),
                }
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for j in k..n {
                    let sub = &factor * &a[k][j];
                    a[i][j] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|r| (0..n).map(|c| self.at(r, c).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        inv.swap(k, i);
                    }
                    None => return Err(MatrixError::Singular),
                }
            }
            let pivot = a[k][k].clone();
            for j in 0..n {
                a[k][j] /= &pivot;
                inv[k][j] /= &pivot;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let factor = a[i][k].clone();
                for j in 0..n {
                    let s = &factor * &a[k][j];
                    a[i][j] -= s;
                    let s = &factor * &inv[k][j];
                    inv[i][j] -= s;
                }
            }
        }
        let entries = inv.into_iter().flatten().collect();
        RationalMatrix::new(n, n, entries)
    }

    /// True iff every square minor of every order is nonzero.
    pub fn all_square_minors_nonsingular(&self) -> bool {
        if self.entries.iter().any(|e| e.is_zero()) {
            return false;
        }
        let kmax = self.rows.min(self.cols);
        for k in 2..=kmax {
            let mut ok = true;
            for_each_subset(self.rows, k, &mut |rs| {
                for_each_subset(self.cols, k, &mut |cs| {
                    if self.submatrix(rs, cs).determinant().unwrap().is_zero() {
                        ok = false;
                        return false;
                    }
                    true
                });
                ok
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for e in &self.entries {
            l = num_integer::lcm(l, e.denom().abs());
        }
        l
    }

    /// Multiplies by `k` and returns the integer matrix; errors if any entry
    /// fails to clear.
    pub fn scale_to_int(&self, k: &BigInt) -> Result<IntMatrix, MatrixError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let scaled = e * BigRational::from_integer(k.clone());
            if !scaled.is_integer() {
                return Err(MatrixError::Parse(format!(
                    "entry {e} does not clear with factor {k}"
                )));
            }
            entries.push(scaled.to_integer());
        }
        IntMatrix::new(self.rows, self.cols, entries)
    }
}

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::MatrixError;

/// Dense integer matrix with arbitrary-precision entries, row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{}", entries.len()),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds from row-major i64 data; panics if the slice length is wrong.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count");
        IntMatrix {
            rows,
            cols,
            entries: data.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    /// Builds from explicit rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn format(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &BigInt) {
        let idx = r * self.cols + c;
        self.entries[idx] += v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.at(r, c).clone();
            }
        }
        t
    }

    /// Reverses every column, i.e. reverses the row order.
    pub fn flip_columns(&self) -> Self {
        let mut m = Self::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.entries[(self.rows - 1 - r) * self.cols + c] = self.at(r, c).clone();
            }
        }
        m
    }

    /// Half turn: reverses both the row order and the column order.
    pub fn rotate180(&self) -> Self {
        let mut m = Self::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.entries[(self.rows - 1 - r) * self.cols + (self.cols - 1 - c)] =
                    self.at(r, c).clone();
            }
        }
        m
    }

    pub fn hconcat(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("{} rows", self.rows),
                found: format!("{} rows", other.rows),
            });
        }
        let mut m = Self::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.entries[r * m.cols + c] = self.at(r, c).clone();
            }
            for c in 0..other.cols {
                m.entries[r * m.cols + self.cols + c] = other.at(r, c).clone();
            }
        }
        Ok(m)
    }

    /// Submatrix on the given row and column index lists, in list order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.at(r, c).clone());
            }
        }
        IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Removes the listed rows and columns (0-indexed, duplicates ignored).
    pub fn delete_rows_cols(&self, del_rows: &[usize], del_cols: &[usize]) -> Self {
        let keep_rows: Vec<usize> = (0..self.rows).filter(|r| !del_rows.contains(r)).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|c| !del_cols.contains(c)).collect();
        self.submatrix(&keep_rows, &keep_cols)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
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
                    m.add_at(r, c, &v);
                }
            }
        }
        Ok(m)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("{} entries", self.cols),
                found: format!("{}", v.len()),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c) * &v[c];
                }
                acc
            })
            .collect())
    }

    /// Determinant by fraction-free elimination.  Exact for any size.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            // Empty product convention.
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    // Bareiss: division by the previous pivot is exact.
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if sign < 0 { -det } else { det })
    }

    /// True iff every square minor of every order is nonzero.
    pub fn all_square_minors_nonsingular(&self) -> bool {
        if self.rows == 0 || self.cols == 0 {
            return true;
        }
        // Order 1 first: any zero entry settles it cheaply.
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

    /// Number of square minors `all_square_minors_nonsingular` inspects.
    /// Useful as an upfront cost estimate.
    pub fn square_minor_count(&self) -> u128 {
        let kmax = self.rows.min(self.cols);
        (1..=kmax)
            .map(|k| binomial(self.rows, k).saturating_mul(binomial(self.cols, k)))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    /// True iff any r columns of this r x s matrix are linearly independent,
    /// i.e. every maximal minor is nonzero.  Needs s >= r.
    pub fn is_highly_nonsingular(&self) -> Result<bool, MatrixError> {
        if self.rows == 0 {
            return Err(MatrixError::Empty);
        }
        if self.cols < self.rows {
            return Err(MatrixError::TooFewColumns {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let all_rows: Vec<usize> = (0..self.rows).collect();
        let mut ok = true;
        for_each_subset(self.cols, self.rows, &mut |cs| {
            if self
                .submatrix(&all_rows, cs)
                .determinant()
                .unwrap()
                .is_zero()
            {
                ok = false;
                return false;
            }
            true
        });
        Ok(ok)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Row-major entries converted to i64; errors if any entry overflows.
    pub fn to_i64_vec(&self) -> Result<Vec<i64>, MatrixError> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (idx, e) in self.entries.iter().enumerate() {
            match i64::try_from(e) {
                Ok(v) => out.push(v),
                Err(_) => {
                    return Err(MatrixError::EntryOutOfRange {
                        row: idx / self.cols,
                        col: idx % self.cols,
                    })
                }
            }
        }
        Ok(out)
    }

    /// Text form: header line `rows cols`, then one line per row of
    /// space-separated integers.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, MatrixError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(MatrixError::Parse("empty input".into()))?;
        let mut hp = header.split_whitespace();
        let rows: usize = hp
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(MatrixError::Parse("bad row count".into()))?;
        let cols: usize = hp
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(MatrixError::Parse("bad column count".into()))?;
        if hp.next().is_some() {
            return Err(MatrixError::Parse("trailing tokens in header".into()));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or(MatrixError::Parse(format!("missing row {r}")))?;
            for tok in line.split_whitespace() {
                let v = BigInt::from_str(tok)
                    .map_err(|_| MatrixError::Parse(format!("bad integer `{tok}`")))?;
                entries.push(v);
            }
            if entries.len() != (r + 1) * cols {
                return Err(MatrixError::Parse(format!("row {r} has wrong length")));
            }
        }
        if lines.next().is_some() {
            return Err(MatrixError::Parse("trailing rows".into()));
        }
        IntMatrix::new(rows, cols, entries)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        Ok(())
    }
}

/// Visits every k-subset of {0,..,n-1} in lexicographic order.  The visitor
/// returns false to stop early; the function returns false if stopped.
pub fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        // Rightmost index that can still move.
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return true;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

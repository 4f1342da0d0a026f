use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::LatticeError;

/// Dense integer matrix, row-major, arbitrary precision.
///
/// Zero rows or zero columns are legal and denote the zero map between the
/// corresponding free modules.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LatticeError> {
        if entries.len() != rows * cols {
            return Err(LatticeError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: (0..rows * cols).map(|_| BigInt::zero()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows<T>(cols: usize, rows: &[Vec<T>]) -> Self
    where
        T: Clone + Into<BigInt>,
    {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r.iter().cloned().map(Into::into));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.entries[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Product `self · rhs`. Panics on incompatible shapes.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "incompatible vector length");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination. Panics if not square.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.row_vectors();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// True iff the matrix is square with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix({}x{})[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn shape_checked() {
        assert!(IntegerMatrix::new(2, 2, vec![BigInt::one()]).is_err());
        assert!(IntegerMatrix::new(0, 3, vec![]).is_ok());
    }

    #[test]
    fn determinant_small() {
        let m = IntegerMatrix::from_rows(3, &[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.determinant(), BigInt::zero());
        let m = IntegerMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
        assert!(m.is_unimodular());
        assert!(IntegerMatrix::zeros(0, 0).is_unimodular());
    }

    #[test]
    fn empty_products() {
        let a = IntegerMatrix::zeros(0, 3);
        let b = IntegerMatrix::zeros(3, 2);
        let p = a.mul(&b);
        assert_eq!((p.rows(), p.cols()), (0, 2));
        let c = IntegerMatrix::zeros(2, 0).mul(&IntegerMatrix::zeros(0, 4));
        assert!(c.is_zero());
        assert_eq!((c.rows(), c.cols()), (2, 4));
    }
}

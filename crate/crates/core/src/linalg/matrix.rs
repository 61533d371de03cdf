use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{format_scalar, int, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of a reduced row-echelon computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Convenience constructor from integer rows; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| int(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Scalar::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Gauss-Jordan elimination to the unique reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let delta = &factor * m.get(r, j);
                    if !delta.is_zero() {
                        let v = m.get(i, j) - delta;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, rank: pivots.len(), pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let rr = aug.rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| rr.reduced.get(i, n + j).clone()))
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                let factor = m.get(i, c) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &factor * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    /// Solves `self · x = b` for a single column `b`.
    ///
    /// Returns `Ok(None)` exactly when `b` is outside the column space. Free
    /// variables of an under-determined system are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.cols != 1 {
            return Err(Error::DimensionMismatch("right-hand side must be a column".into()));
        }
        self.solve_many(b)
    }

    /// Column-by-column solve of `self · X = B`; `None` if any column is inconsistent.
    pub fn solve_many(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let aug = Matrix::from_fn(self.rows, n + b.cols, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                b.get(i, j - n).clone()
            }
        });
        let rr = aug.rref();
        if rr.pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Matrix { rows: n, cols: b.cols, data: vec![Scalar::zero(); n * b.cols] };
        for (row, &p) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, rr.reduced.get(row, n + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Basis of the right kernel `{x : self · x = 0}`, one column per free variable.
    pub fn kernel(&self) -> Vec<Matrix> {
        let rr = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = Matrix::zeros(self.cols, 1);
                v.set(fc, 0, Scalar::one());
                for (row, &p) in rr.pivots.iter().enumerate() {
                    v.set(p, 0, -rr.reduced.get(row, fc).clone());
                }
                v
            })
            .collect()
    }

    /// Largest absolute numerator/denominator bit length; used for reporting.
    pub fn height_bits(&self) -> u64 {
        self.data.iter().map(|x| x.numer().abs().bits().max(x.denom().bits())).max().unwrap_or(0)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_scalar(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn rref_identity() {
        let rr = Matrix::identity(2).rref();
        assert_eq!(rr.reduced, Matrix::identity(2));
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_rotation_is_identity() {
        let rr = Matrix::from_i64(&[&[0, 1], &[-1, 0]]).rref();
        assert_eq!(rr.reduced, Matrix::identity(2));
        assert_eq!(rr.rank, 2);
    }

    #[test]
    fn rref_proportional_rows() {
        let rr = Matrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(rr.reduced, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.pivots, vec![0]);
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(&[&[1], &[2]]);
        assert_eq!(Matrix::identity(2).solve(&b).unwrap(), Some(b.clone()));

        let a = Matrix::from_i64(&[&[1, 1], &[0, 0]]);
        assert_eq!(a.solve(&Matrix::from_i64(&[&[0], &[1]])).unwrap(), None);

        let a = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
        let x = a.solve(&Matrix::from_i64(&[&[1], &[1]])).unwrap().unwrap();
        assert_eq!(x, Matrix::from_fn(2, 1, |i, _| if i == 0 { frac(1, 2) } else { frac(1, 3) }));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::identity(2);
        assert!(matches!(a.solve(&Matrix::from_i64(&[&[1], &[2], &[3]])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_and_det() {
        let a = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det().unwrap(), int(1));
        assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), Matrix::identity(2));
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
        assert_eq!(a.pow(-2).unwrap().mul(&a.pow(2).unwrap()).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.mul(&v).unwrap().is_zero());
        }
    }
}

//! Dense matrices over a field.

use std::fmt;

use super::scalar::Field;
use crate::error::{Error, Result};

/// Largest size for which inverses use the adjugate formula.
pub const ADJUGATE_MAX: usize = 4;

/// A dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T: Field> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(d: Vec<T>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    /// Elementary matrix unit `E_{ij}` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[i * n + j] = T::one();
        m
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Diagonal entries.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Applies `f` entrywise.
    pub fn map<U: Field, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Applies a fallible `f` entrywise.
    pub fn try_map<U: Field, F: FnMut(&T) -> Result<U>>(&self, f: F) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<Vec<U>>>()?,
        })
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| c.clone() * a.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * b.clone();
                }
                out.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    /// Left-to-right product of a nonempty list.
    pub fn product<'a, I: IntoIterator<Item = &'a Matrix<T>>>(it: I) -> Result<Self>
    where
        T: 'a,
    {
        let mut iter = it.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::ShapeMismatch("empty product".into()))?
            .clone();
        iter.try_fold(first, |acc, m| acc.mul(m))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} is not square",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    pub fn trace(&self) -> Result<T> {
        self.require_square()?;
        Ok((0..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, i).clone()))
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Self {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == skip_r {
                continue;
            }
            for j in 0..n {
                if j != skip_c {
                    data.push(self.get(i, j).clone());
                }
            }
        }
        Matrix {
            rows: n - 1,
            cols: n - 1,
            data,
        }
    }

    fn det_laplace(&self) -> T {
        let n = self.rows;
        match n {
            1 => self.data[0].clone(),
            2 => {
                self.get(0, 0).clone() * self.get(1, 1).clone()
                    - self.get(0, 1).clone() * self.get(1, 0).clone()
            }
            _ => {
                let mut acc = T::zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let t = a.clone() * self.minor(0, j).det_laplace();
                    acc = if j % 2 == 0 { acc + t } else { acc - t };
                }
                acc
            }
        }
    }

    fn det_gauss(&self) -> Result<T> {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let p = match (c..n).find(|&r| !a.get(r, c).is_zero()) {
                Some(p) => p,
                None => return Ok(T::zero()),
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = det * piv.clone();
            let pinv = piv.try_inv()?;
            for r in c + 1..n {
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                let f = f * pinv.clone();
                for k in c..n {
                    let v = a.get(r, k).clone() - f.clone() * a.get(c, k).clone();
                    a.set(r, k, v);
                }
            }
        }
        Ok(det)
    }

    /// Determinant.
    pub fn det(&self) -> Result<T> {
        self.require_square()?;
        if self.rows <= ADJUGATE_MAX {
            Ok(self.det_laplace())
        } else {
            self.det_gauss()
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    /// Inverse: adjugate formula up to size [`ADJUGATE_MAX`], Gauss–Jordan
    /// elimination with nonzero pivots beyond.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        if n <= ADJUGATE_MAX {
            let d = self.det_laplace();
            if d.is_zero() {
                return Err(Error::SingularMatrix);
            }
            let dinv = d.try_inv()?;
            if n == 1 {
                return Ok(Matrix::diag(vec![dinv]));
            }
            let mut out = Self::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let c = self.minor(j, i).det_laplace();
                    let c = if (i + j) % 2 == 0 { c } else { -c };
                    out.set(i, j, c * dinv.clone());
                }
            }
            return Ok(out);
        }
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a.get(r, c).is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pinv = a.get(c, c).try_inv()?;
            for k in 0..n {
                a.set(c, k, a.get(c, k).clone() * pinv.clone());
                inv.set(c, k, inv.get(c, k).clone() * pinv.clone());
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let v = a.get(r, k).clone() - f.clone() * a.get(c, k).clone();
                    a.set(r, k, v);
                    let w = inv.get(r, k).clone() - f.clone() * inv.get(c, k).clone();
                    inv.set(r, k, w);
                }
            }
        }
        Ok(inv)
    }

    /// `(M⁻¹)ᵗ`.
    pub fn inv_transpose(&self) -> Result<Self> {
        Ok(self.inverse()?.transpose())
    }

    /// `self^e` for a signed exponent.
    pub fn pow(&self, e: i32) -> Result<Self> {
        self.require_square()?;
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::identity(self.rows);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_upper_triangular() && self.is_lower_triangular()
    }

    pub fn has_unit_diagonal(&self) -> bool {
        self.diagonal().iter().all(|x| x.is_one())
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_upper_triangular() && self.has_unit_diagonal()
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_lower_triangular() && self.has_unit_diagonal()
    }

    /// The constant `c` when the matrix equals `c·1`.
    pub fn as_scalar_constant(&self) -> Option<T> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        let c = self.get(0, 0).clone();
        if !c.is_constant() || self.diagonal().iter().any(|d| *d != c) {
            return None;
        }
        Some(c)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> Result<usize> {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let p = match (rank..self.rows).find(|&r| !a.get(r, c).is_zero()) {
                Some(p) => p,
                None => continue,
            };
            a.swap_rows(p, rank);
            let pinv = a.get(rank, c).try_inv()?;
            for r in rank + 1..self.rows {
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                let f = f * pinv.clone();
                for k in c..self.cols {
                    let v = a.get(r, k).clone() - f.clone() * a.get(rank, k).clone();
                    a.set(r, k, v);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        Ok(rank)
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }
}

impl<T: Field + fmt::Display> fmt::Display for Matrix<T> {
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
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: Field> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.data.iter()).finish()
    }
}

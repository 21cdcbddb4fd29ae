//! Small dense matrices over a [`FieldSpec`].
//!
//! Determinants over the rationals clear denominators row by row and run
//! Bareiss' fraction-free elimination on the resulting integer matrix; over
//! `F_p` plain Gaussian elimination is used. Pivots are always the first
//! nonzero entry in row order, so results are deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::Poly;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for x in &data {
            field.ensure_same(&x.field())?;
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let data: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, &data).expect("well-formed literal")
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Matrix> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                data.push(c[i].clone());
            }
        }
        Matrix::new(field, rows, cols, data)
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field);
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare(self.rows, self.cols))
        }
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        self.field.ensure_same(&other.field)?;
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
        Ok(self.with_data(data))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(self.with_data(data))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.with_data(self.data.iter().map(|a| a * c).collect())
    }

    fn with_data(&self, data: Vec<Scalar>) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.ensure_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = &acc + &(a * other.get(k, j));
                    }
                }
                data.push(acc);
            }
        }
        Ok(Matrix { field: self.field, rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        for x in v {
            self.field.ensure_same(&x.field())?;
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.field.zero(), |acc, k| &acc + &(self.get(i, k) * &v[k]))
            })
            .collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    /// Drops column `j`.
    pub fn without_column(&self, j: usize) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            for k in (0..self.cols).filter(|&k| k != j) {
                data.push(self.get(i, k).clone());
            }
        }
        Matrix { field: self.field, rows: self.rows, cols: self.cols - 1, data }
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let first = blocks.first().ok_or_else(|| Error::DimensionMismatch("no blocks".into()))?;
        let mut columns = Vec::new();
        for b in blocks {
            first.field.ensure_same(&b.field)?;
            if b.rows != first.rows {
                return Err(Error::DimensionMismatch("hstack row counts differ".into()));
            }
            columns.extend((0..b.cols).map(|j| b.column(j)));
        }
        Matrix::from_columns(first.field, first.rows, &columns)
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let first = blocks.first().ok_or_else(|| Error::DimensionMismatch("no blocks".into()))?;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            first.field.ensure_same(&b.field)?;
            if b.cols != first.cols {
                return Err(Error::DimensionMismatch("vstack column counts differ".into()));
            }
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Ok(Matrix { field: first.field, rows, cols: first.cols, data })
    }

    pub fn column_matrix(field: FieldSpec, v: &[Scalar]) -> Result<Matrix> {
        Matrix::new(field, v.len(), 1, v.to_vec())
    }

    /// Exact determinant.
    pub fn det(&self) -> Result<Scalar> {
        self.require_square()?;
        Ok(match self.field {
            FieldSpec::Rationals => Scalar::Rational(self.det_bareiss()),
            FieldSpec::Prime(_) => self.det_gauss(),
        })
    }

    fn det_bareiss(&self) -> BigRational {
        let n = self.rows;
        // Clear denominators row by row; det(M) = det(D M) / prod(d_i).
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row: Vec<&BigRational> =
                self.row_slice(i).iter().map(|x| x.as_rational().expect("rational entry")).collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            m.push(row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect());
            scale *= lcm;
        }
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return BigRational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let det = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
        let det = if negate { -det } else { det };
        BigRational::new(det, scale)
    }

    fn row_slice(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn det_gauss(&self) -> Scalar {
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return self.field.zero();
            };
            if piv != k {
                m.swap_rows(piv, k);
                det = -det;
            }
            let pivot = m.get(k, k).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in k + 1..n {
                let factor = m.get(i, k) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j) - &(&factor * m.get(k, j));
                    m.data[i * n + j] = v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(piv, r);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.data[r * self.cols + j] = v;
            }
            for i in (0..self.rows).filter(|&i| i != r) {
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&factor * self.get(r, j));
                    self.data[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solves `self * x = b` for square `self`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.require_square()?;
        let n = self.rows;
        if b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for a {n}x{n} system",
                b.len()
            )));
        }
        let rhs = Matrix::column_matrix(self.field, b)?;
        let mut aug = Matrix::hstack(&[self, &rhs])?;
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return Err(Error::SingularMatrix);
        }
        Ok(aug.column(n))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Matrix::hstack(&[self, &Matrix::identity(self.field, n)])?;
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        let columns: Vec<Vec<Scalar>> = (n..2 * n).map(|j| aug.column(j)).collect();
        Matrix::from_columns(self.field, n, &columns)
    }

    /// `self^k` by repeated squaring; `k = 0` gives the identity.
    pub fn pow(&self, mut k: u64) -> Result<Matrix> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row_slice(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `m^k` (free-function form).
pub fn mat_pow(m: &Matrix, k: u64) -> Result<Matrix> {
    m.pow(k)
}

/// Rows `(1, xi, ..., xi^{cols-1})`.
pub fn vandermonde(field: FieldSpec, xs: &[Scalar], cols: usize) -> Result<Matrix> {
    let mut data = Vec::with_capacity(xs.len() * cols);
    for x in xs {
        field.ensure_same(&x.field())?;
        let mut p = field.one();
        for _ in 0..cols {
            data.push(p.clone());
            p = &p * x;
        }
    }
    Matrix::new(field, xs.len(), cols, data)
}

/// Companion matrix of `x^g - X^t P_even` where `p_even = (p_{2g}, ..., p_2)`:
/// ones on the subdiagonal and `p_even` in the last column.
/// Acting on coefficient vectors in the basis `1, x, ..., x^{g-1}` it is
/// multiplication by `x` modulo the polynomial.
pub fn companion(field: FieldSpec, p_even: &[Scalar]) -> Result<Matrix> {
    let g = p_even.len();
    let mut m = Matrix::zeros(field, g, g);
    for (i, p) in p_even.iter().enumerate() {
        field.ensure_same(&p.field())?;
        if i > 0 {
            m.set(i, i - 1, field.one());
        }
        m.set(i, g - 1, p.clone());
    }
    Ok(m)
}

/// Evaluates `p(M)` by Horner's rule.
pub fn poly_at_matrix(p: &Poly, m: &Matrix) -> Result<Matrix> {
    p.field().ensure_same(&m.field())?;
    m.require_square()?;
    let n = m.rows();
    let mut acc = Matrix::zeros(m.field(), n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m)?.add(&Matrix::identity(m.field(), n).scale(c))?;
    }
    Ok(acc)
}

//! Dense matrices in two modes: exact over cyclotomic fields, and complex
//! double precision backed by `nalgebra`.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

/// Complex double-precision matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Default tolerance for float-mode comparisons.
pub const FLOAT_TOL: f64 = 1e-9;

/// Dense row-major matrix over `Q(ζ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNumber>,
}

impl CycMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNumber) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CycMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<CycNumber>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(CycMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { CycNumber::one() } else { CycNumber::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| CycNumber::zero())
    }

    pub fn scalar(n: usize, s: &CycNumber) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { s.clone() } else { CycNumber::zero() })
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

    pub fn get(&self, r: usize, c: usize) -> &CycNumber {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNumber) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[CycNumber] {
        &self.data
    }

    /// Least common conductor of all entries.
    pub fn conductor(&self) -> u32 {
        use num_integer::Integer;
        self.data.iter().fold(1u32, |acc, x| acc.lcm(&x.conductor()))
    }

    pub fn mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CycMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * other.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("addition of differently shaped matrices".into()));
        }
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: &CycNumber) -> CycMatrix {
        CycMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn conj_transpose(&self) -> CycMatrix {
        CycMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// Gauss–Jordan inverse with exact pivoting on the first nonzero entry.
    pub fn inverse(&self) -> Result<CycMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CycMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let p_inv = a.get(col, col).inv()?;
            for c in 0..n {
                let idx = col * n + c;
                a.data[idx] = &a.data[idx] * &p_inv;
                inv.data[idx] = &inv.data[idx] * &p_inv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let (src, dst) = (col * n + c, r * n + c);
                    if !a.data[src].is_zero() {
                        a.data[dst] = &a.data[dst] - &(&f * &a.data[src]);
                    }
                    if !inv.data[src].is_zero() {
                        inv.data[dst] = &inv.data[dst] - &(&f * &inv.data[src]);
                    }
                }
            }
        }
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c { x.is_one() } else { x.is_zero() }
                })
            })
    }

    /// Returns `s` when the matrix equals `s·I`.
    pub fn as_scalar(&self) -> Option<CycNumber> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let s = self.get(0, 0).clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                let ok = if r == c { *x == s } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn to_float(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).embed())
    }

    /// Flattened exact key: every entry promoted to conductor `m`, encoded as
    /// denominator followed by numerators.
    pub fn key_at(&self, m: u32) -> Vec<BigInt> {
        let mut key = Vec::new();
        for x in &self.data {
            let (den, num) = x.integer_parts_at(m);
            key.push(den);
            key.extend(num);
        }
        key
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A matrix in either exact or float mode.
#[derive(Clone, Debug)]
pub enum Matrix {
    Exact(CycMatrix),
    Float(CMatrix),
}

impl Matrix {
    pub fn identity_like(&self) -> Matrix {
        match self {
            Matrix::Exact(m) => Matrix::Exact(CycMatrix::identity(m.rows())),
            Matrix::Float(m) => Matrix::Float(CMatrix::identity(m.nrows(), m.ncols())),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Matrix::Exact(_))
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            Matrix::Exact(m) => (m.rows(), m.cols()),
            Matrix::Float(m) => (m.nrows(), m.ncols()),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        match (self, other) {
            (Matrix::Exact(a), Matrix::Exact(b)) => Ok(Matrix::Exact(a.mul(b)?)),
            (Matrix::Float(a), Matrix::Float(b)) => {
                if a.ncols() != b.nrows() {
                    return Err(Error::ShapeMismatch(format!(
                        "{}x{} times {}x{}",
                        a.nrows(),
                        a.ncols(),
                        b.nrows(),
                        b.ncols()
                    )));
                }
                Ok(Matrix::Float(a * b))
            }
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        match (self, other) {
            (Matrix::Exact(a), Matrix::Exact(b)) => Ok(Matrix::Exact(a.add(b)?)),
            (Matrix::Float(a), Matrix::Float(b)) => {
                if a.shape() != b.shape() {
                    return Err(Error::ShapeMismatch("addition of differently shaped matrices".into()));
                }
                Ok(Matrix::Float(a + b))
            }
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        match self {
            Matrix::Exact(a) => Ok(Matrix::Exact(a.inverse()?)),
            Matrix::Float(a) => float_inverse(a).map(Matrix::Float),
        }
    }

    pub fn conj_transpose(&self) -> Matrix {
        match self {
            Matrix::Exact(a) => Matrix::Exact(a.conj_transpose()),
            Matrix::Float(a) => Matrix::Float(a.adjoint()),
        }
    }

    /// Exact equality in exact mode; entrywise within `tol` in float mode.
    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        match (self, other) {
            (Matrix::Exact(a), Matrix::Exact(b)) => a == b,
            (Matrix::Float(a), Matrix::Float(b)) => float_close(a, b, tol),
            _ => false,
        }
    }

    pub fn to_float(&self) -> CMatrix {
        match self {
            Matrix::Exact(a) => a.to_float(),
            Matrix::Float(a) => a.clone(),
        }
    }
}

/// Entrywise comparison of float matrices.
pub fn float_close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= tol)
}

/// LU inverse with a relative singularity threshold.
pub fn float_inverse(a: &CMatrix) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
    }
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
    let svals = a.clone().singular_values();
    let smin = svals.iter().cloned().fold(f64::INFINITY, f64::min);
    if a.nrows() > 0 && smin <= 1e-13 * scale {
        return Err(Error::SingularMatrix);
    }
    a.clone().try_inverse().ok_or(Error::SingularMatrix)
}

/// Largest entry modulus of `M M^* - I`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let prod = m * m.adjoint();
    let id = CMatrix::identity(m.nrows(), m.ncols());
    (prod - id).iter().map(|x| x.norm()).fold(0.0, f64::max)
}

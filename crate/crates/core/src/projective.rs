//! Projective representations of `B_n`: commutator scalars, the `±1`
//! obstruction for far generator pairs, and lifting to linear representations.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{Cholesky, DMatrix};
use num_complex::Complex64;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, CycMatrix, Matrix};
use crate::rep::{GenRep, RepParams};

const SCALAR_TOL: f64 = 1e-8;

/// A scalar in the mode of the matrices it came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(CycNumber),
    Float(Complex64),
}

impl Scalar {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(c) => c.embed(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_one(),
            Scalar::Float(z) => (z - Complex64::new(1.0, 0.0)).norm() < SCALAR_TOL,
        }
    }

    pub fn is_minus_one(&self) -> bool {
        match self {
            Scalar::Exact(c) => *c == CycNumber::from_integer(-1),
            Scalar::Float(z) => (z + Complex64::new(1.0, 0.0)).norm() < SCALAR_TOL,
        }
    }

    fn same(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_complex() - other.to_complex()).norm() < SCALAR_TOL,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => write!(f, "{}", c),
            Scalar::Float(z) => write!(f, "{:.10} {:+.10}i", z.re, z.im),
        }
    }
}

/// Replaces `z` by the nearest root of unity of order at most 24 when within `1e-8`.
pub fn snap_root_of_unity(z: Complex64) -> Complex64 {
    for m in 1..=24u32 {
        let k = (z.arg() * m as f64 / (2.0 * PI)).round();
        let root = Complex64::from_polar(1.0, 2.0 * PI * k / m as f64);
        if (z - root).norm() < SCALAR_TOL {
            return root;
        }
    }
    z
}

fn float_scalar(m: &CMatrix) -> Option<Complex64> {
    let d = m.nrows();
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let c = m[(0, 0)];
    for r in 0..d {
        for s in 0..d {
            let expect = if r == s { c } else { Complex64::new(0.0, 0.0) };
            if (m[(r, s)] - expect).norm() > SCALAR_TOL * scale {
                return None;
            }
        }
    }
    Some(c)
}

fn as_scalar(m: &Matrix) -> Option<Scalar> {
    match m {
        Matrix::Exact(e) => e.as_scalar().map(Scalar::Exact),
        Matrix::Float(f) => float_scalar(f).map(|z| Scalar::Float(snap_root_of_unity(z))),
    }
}

fn scale(m: &Matrix, s: &Scalar) -> Matrix {
    match (m, s) {
        (Matrix::Exact(e), Scalar::Exact(c)) => Matrix::Exact(e.scale(c)),
        (m, s) => Matrix::Float(m.to_float() * s.to_complex()),
    }
}

fn scalar_pow(s: &Scalar, e: i64) -> Result<Scalar> {
    match s {
        Scalar::Exact(c) => Ok(Scalar::Exact(c.pow(e)?)),
        Scalar::Float(z) => Ok(Scalar::Float(z.powi(e as i32))),
    }
}

/// The scalar `c` with `A B A^{-1} B^{-1} = c I`.
pub fn pair_commutator_scalar(a: &Matrix, b: &Matrix) -> Result<Scalar> {
    let comm = a.mul(b)?.mul(&a.inverse()?)?.mul(&b.inverse()?)?;
    as_scalar(&comm).ok_or(Error::NotScalar)
}

/// Invertible matrices, one per generator, each meaningful only up to a scalar.
#[derive(Clone, Debug)]
pub struct ProjRep {
    strands: usize,
    degree: usize,
    images: Vec<Matrix>,
}

impl ProjRep {
    /// Validates shapes and the braid relations up to scalars.
    pub fn new(strands: usize, images: Vec<Matrix>) -> Result<Self> {
        let p = Self::new_unchecked(strands, images)?;
        for i in 0..p.images.len() {
            for j in i + 1..p.images.len() {
                let (a, b) = (&p.images[i], &p.images[j]);
                let ratio = if j == i + 1 {
                    let lhs = a.mul(b)?.mul(a)?;
                    let rhs = b.mul(a)?.mul(b)?;
                    lhs.mul(&rhs.inverse()?)?
                } else {
                    a.mul(b)?.mul(&a.inverse()?)?.mul(&b.inverse()?)?
                };
                if as_scalar(&ratio).is_none() {
                    return Err(Error::Inconsistent(format!(
                        "generators {} and {} violate the braid relations up to scalars",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(p)
    }

    pub fn new_unchecked(strands: usize, images: Vec<Matrix>) -> Result<Self> {
        if strands < 2 || images.len() != strands - 1 {
            return Err(Error::ShapeMismatch(format!("{} images for {} strands", images.len(), strands)));
        }
        let (degree, cols) = images[0].shape();
        if degree != cols {
            return Err(Error::ShapeMismatch(format!("generator image is {}x{}", degree, cols)));
        }
        let exact = images[0].is_exact();
        for m in &images {
            if m.shape() != (degree, degree) {
                return Err(Error::ShapeMismatch("generator images of different sizes".into()));
            }
            if m.is_exact() != exact {
                return Err(Error::ModeMismatch);
            }
            m.inverse()?;
        }
        Ok(ProjRep { strands, degree, images })
    }

    pub fn projectivize(rep: &GenRep) -> ProjRep {
        ProjRep { strands: rep.strands(), degree: rep.degree(), images: rep.images().to_vec() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn is_exact(&self) -> bool {
        self.images[0].is_exact()
    }

    /// Whether each image of `other` is a scalar multiple of the matching image here.
    pub fn projectively_equal(&self, other: &ProjRep, tol: f64) -> bool {
        if self.strands != other.strands || self.degree != other.degree {
            return false;
        }
        self.images.iter().zip(&other.images).all(|(a, b)| proportional(a, b, tol))
    }
}

fn proportional(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    match (a, b) {
        (Matrix::Exact(x), Matrix::Exact(y)) => {
            let Some(k) = (0..x.entries().len()).find(|&k| !x.entries()[k].is_zero()) else {
                return y.entries().iter().all(|e| e.is_zero());
            };
            let Ok(c) = y.entries()[k].checked_div(&x.entries()[k]) else { return false };
            x.scale(&c) == *y
        }
        _ => {
            let (x, y) = (a.to_float(), b.to_float());
            let Some((k, _)) = x.iter().enumerate().max_by(|p, q| p.1.norm().partial_cmp(&q.1.norm()).unwrap()) else {
                return true;
            };
            if x[k].norm() == 0.0 {
                return y.norm() <= tol;
            }
            let c = y[k] / x[k];
            let scale = y.iter().map(|z| z.norm()).fold(1.0, f64::max);
            (x * c - y).iter().all(|z| z.norm() <= tol * scale)
        }
    }
}

/// `[φ(x_i), φ(x_j)]` for `|i - j| ≥ 2` (1-based indices).
pub fn commutator_scalar(p: &ProjRep, i: usize, j: usize) -> Result<Scalar> {
    for v in [i, j] {
        if v == 0 || v >= p.strands {
            return Err(Error::IndexOutOfRange(format!("generator {} of B_{}", v, p.strands)));
        }
    }
    if i.abs_diff(j) < 2 {
        return Err(Error::PairTooClose(i, j));
    }
    pair_commutator_scalar(&p.images[i - 1], &p.images[j - 1])
}

/// The common commutator scalar of far generator pairs, which must be `+1` or `-1`.
pub fn obstruction(p: &ProjRep) -> Result<i32> {
    if p.strands < 4 {
        return Err(Error::InvalidParameter(format!("no far generator pairs in B_{}", p.strands)));
    }
    let mut common: Option<Scalar> = None;
    for i in 1..p.strands {
        for j in i + 2..p.strands {
            let c = commutator_scalar(p, i, j)?;
            match &common {
                None => common = Some(c),
                Some(prev) if prev.same(&c) => {}
                Some(prev) => {
                    return Err(Error::Inconsistent(format!(
                        "far commutators differ: {} versus {} at ({}, {})",
                        prev, c, i, j
                    )))
                }
            }
        }
    }
    let c = common.expect("at least one far pair");
    if c.is_one() {
        Ok(1)
    } else if c.is_minus_one() {
        Ok(-1)
    } else {
        Err(Error::Inconsistent(format!("far commutator {} is not +1 or -1", c)))
    }
}

/// Float phase normalization: first nonzero entry of the first column made real positive.
fn fix_phase(m: &Matrix) -> Matrix {
    match m {
        Matrix::Exact(_) => m.clone(),
        Matrix::Float(f) => {
            let d = f.nrows();
            let lead = (0..d).map(|r| f[(r, 0)]).find(|z| z.norm() > 1e-12);
            match lead {
                Some(z) => Matrix::Float(f * (z.conj() / z.norm())),
                None => m.clone(),
            }
        }
    }
}

/// Lifts a projective representation to a linear one whose images are
/// scalar multiples of the given ones.
pub fn lift(p: &ProjRep) -> Result<GenRep> {
    let n = p.strands;
    let params = RepParams::named("lift");
    if n == 2 {
        return GenRep::new(n, vec![fix_phase(&p.images[0])], params);
    }
    if n >= 4 && obstruction(p)? == -1 {
        return Err(Error::Obstructed);
    }
    let x1 = fix_phase(&p.images[0]);
    let mut y = p.images[0].identity_like();
    for m in &p.images {
        y = y.mul(m)?;
    }
    let y = fix_phase(&y);
    let y_inv = y.inverse()?;

    let mut g = Vec::with_capacity(n - 1);
    g.push(x1);
    for k in 1..n - 1 {
        let next = y.mul(&g[k - 1])?.mul(&y_inv)?;
        g.push(next);
    }
    let mut common: Option<Scalar> = None;
    for i in 0..n - 2 {
        let (a, b) = (&g[i], &g[i + 1]);
        let lhs = a.mul(b)?.mul(a)?;
        let rhs = b.mul(a)?.mul(b)?;
        let ratio = lhs.mul(&rhs.inverse()?)?;
        let ai = as_scalar(&ratio).ok_or_else(|| Error::Inconsistent(format!("a_{} is not scalar", i + 1)))?;
        match &common {
            None => common = Some(ai),
            Some(prev) if prev.same(&ai) => {}
            Some(prev) => return Err(Error::Inconsistent(format!("a_{} = {} differs from {}", i + 1, ai, prev))),
        }
    }
    let a = common.expect("n >= 3");
    let images = g
        .iter()
        .enumerate()
        .map(|(k, gi)| Ok(scale(gi, &scalar_pow(&a, (k + 1) as i64)?)))
        .collect::<Result<Vec<_>>>()?;
    GenRep::new(n, images, params)
}

/// True when the obstruction is `+1` or the degree exceeds `2^{n/6}`.
pub fn degree_bound_predicate(p: &ProjRep) -> Result<bool> {
    if p.strands < 4 {
        return Ok(true);
    }
    let obs = obstruction(p)?;
    Ok(obs == 1 || p.degree as f64 > 2f64.powf(p.strands as f64 / 6.0))
}

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `count` pairwise anticommuting Hermitian involutions of size `2^{⌊count/2⌋}`.
pub fn clifford_generators(count: usize) -> Vec<CMatrix> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let x = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let y = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    let z = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    let id = CMatrix::identity(2, 2);
    let r = count / 2;
    let tensor = |factors: Vec<&CMatrix>| -> CMatrix {
        factors.into_iter().fold(CMatrix::identity(1, 1), |acc, f| kron(&acc, f))
    };
    let mut out = Vec::with_capacity(count);
    for k in 0..r {
        for pauli in [&x, &y] {
            let mut f: Vec<&CMatrix> = Vec::with_capacity(r);
            for s in 0..r {
                f.push(if s < k { &z } else if s == k { pauli } else { &id });
            }
            out.push(tensor(f));
        }
    }
    if count % 2 == 1 {
        out.push(tensor(vec![&z; r]));
    }
    out
}

/// A projective representation of `B_n` (`n ≥ 4`) in which far generators
/// anticommute. Each `x_i` maps to `v_i · γ` for Clifford generators `γ` and
/// unit vectors with `v_i · v_{i+1} = 1/2` and `v_i ⊥ v_j` otherwise.
pub fn anticommuting_fixture(n: usize) -> Result<ProjRep> {
    if n < 4 {
        return Err(Error::InvalidParameter("anticommuting fixture needs n >= 4".into()));
    }
    let k = n - 1;
    let gram = DMatrix::<f64>::from_fn(k, k, |r, c| {
        if r == c {
            1.0
        } else if r.abs_diff(c) == 1 {
            0.5
        } else {
            0.0
        }
    });
    let l = Cholesky::new(gram).expect("positive definite Gram matrix").l();
    let gammas = clifford_generators(k);
    let d = gammas[0].nrows();
    let images = (0..k)
        .map(|i| {
            let mut m = CMatrix::zeros(d, d);
            for (a, g) in gammas.iter().enumerate() {
                m += g * Complex64::new(l[(i, a)], 0.0);
            }
            Matrix::Float(m)
        })
        .collect();
    ProjRep::new(n, images)
}

/// Exact Pauli matrices `X` and `Z`.
pub fn pauli_xz() -> (Matrix, Matrix) {
    let o = CycNumber::one;
    let z = CycNumber::zero;
    let x = CycMatrix::from_rows(vec![vec![z(), o()], vec![o(), z()]]).expect("square");
    let zz = CycMatrix::from_rows(vec![vec![o(), z()], vec![z(), -o()]]).expect("square");
    (Matrix::Exact(x), Matrix::Exact(zz))
}

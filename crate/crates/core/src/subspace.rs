//! Numerical subspaces of `C^d` with orthonormal bases, eigenspaces and
//! intersections via principal angles.

use nalgebra::SVD;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Rank tolerance shared by eigenspace extraction and subspace intersection.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: CMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: CMatrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: CMatrix::identity(ambient, ambient) }
    }

    /// Orthonormalizes the column span of `vectors`, dropping directions whose
    /// singular value is below `tol` relative to the largest.
    pub fn span(vectors: &CMatrix, tol: f64) -> Self {
        let ambient = vectors.nrows();
        if vectors.ncols() == 0 || ambient == 0 {
            return Subspace::zero(ambient);
        }
        let smax = vectors.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if smax == 0.0 {
            return Subspace::zero(ambient);
        }
        let svd = SVD::new(vectors.clone(), true, false);
        let u = svd.u.expect("left singular vectors requested");
        let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let keep: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&k| svd.singular_values[k] > tol * top)
            .collect();
        let basis = CMatrix::from_fn(ambient, keep.len(), |r, c| u[(r, keep[c])]);
        Subspace { ambient, basis }
    }

    /// Coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Self {
        let basis = CMatrix::from_fn(ambient, axes.len(), |r, c| {
            if r == axes[c] { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }
        });
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    /// `T(W)` for an invertible `T`.
    pub fn image(&self, t: &CMatrix) -> Result<Subspace> {
        if t.nrows() != self.ambient || t.ncols() != self.ambient {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} operator on a subspace of C^{}",
                t.nrows(),
                t.ncols(),
                self.ambient
            )));
        }
        if self.dim() == 0 {
            return Ok(self.clone());
        }
        Ok(Subspace::span(&(t * &self.basis), 1e-12))
    }

    /// Largest deviation of `B^* B` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.basis.adjoint() * &self.basis;
        let k = g.nrows();
        (g - CMatrix::identity(k, k)).iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Spectral-norm distance between orthogonal projectors; 1 when dimensions differ.
    pub fn distance(&self, other: &Subspace) -> f64 {
        if self.ambient != other.ambient || self.dim() != other.dim() {
            return 1.0;
        }
        if self.dim() == 0 {
            return 0.0;
        }
        let diff = self.projector() - other.projector();
        diff.singular_values().iter().cloned().fold(0.0, f64::max)
    }

    pub fn contains_vector(&self, v: &CMatrix, tol: f64) -> bool {
        let resid = v - self.projector() * v;
        resid.norm() <= tol * v.norm().max(1.0)
    }
}

/// Span of right singular vectors of `A − λI` with singular value below `tol`.
pub fn eigenspace(a: &CMatrix, lambda: Complex64, tol: f64) -> Result<Subspace> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("eigenspace of a non-square matrix".into()));
    }
    let d = a.nrows();
    if d == 0 {
        return Ok(Subspace::zero(0));
    }
    let shifted = a - CMatrix::identity(d, d) * lambda;
    let svd = SVD::new(shifted, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] < tol)
        .collect();
    // rows of V^* are conjugated right singular vectors
    let basis = CMatrix::from_fn(d, keep.len(), |r, c| v_t[(keep[c], r)].conj());
    Ok(Subspace { ambient: d, basis })
}

/// Intersection of two subspaces: the principal directions whose cosine exceeds `1 − tol`.
pub fn subspace_meet(u: &Subspace, v: &Subspace, tol: f64) -> Result<Subspace> {
    if u.ambient != v.ambient {
        return Err(Error::ShapeMismatch(format!(
            "subspaces of C^{} and C^{}",
            u.ambient, v.ambient
        )));
    }
    if u.dim() == 0 || v.dim() == 0 {
        return Ok(Subspace::zero(u.ambient));
    }
    let cross = u.basis.adjoint() * &v.basis;
    let svd = SVD::new(cross, true, false);
    let left = svd.u.expect("left singular vectors requested");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > 1.0 - tol)
        .collect();
    let coeffs = CMatrix::from_fn(u.dim(), keep.len(), |r, c| left[(r, keep[c])]);
    let vectors = &u.basis * coeffs;
    // the principal vectors are already orthonormal up to rounding; re-orthonormalize
    Ok(Subspace::span(&vectors, 1e-6))
}

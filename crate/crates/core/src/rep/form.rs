//! Positive definite invariant Hermitian forms and unitarization.

use nalgebra::{Cholesky, DMatrix, SVD};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{float_inverse, CMatrix};

const NULL_TOL: f64 = 1e-9;

/// Hermitian matrix from `d²` real parameters: diagonal entries first, then
/// real and imaginary parts of the strict upper triangle.
fn hermitian_from_params(d: usize, p: &[f64]) -> CMatrix {
    let mut h = CMatrix::zeros(d, d);
    for a in 0..d {
        h[(a, a)] = Complex64::new(p[a], 0.0);
    }
    let mut k = d;
    for a in 0..d {
        for b in a + 1..d {
            let z = Complex64::new(p[k], p[k + 1]);
            h[(a, b)] = z;
            h[(b, a)] = z.conj();
            k += 2;
        }
    }
    h
}

fn hermitian_to_params(h: &CMatrix) -> Vec<f64> {
    let d = h.nrows();
    let mut p = Vec::with_capacity(d * d);
    for a in 0..d {
        p.push(h[(a, a)].re);
    }
    for a in 0..d {
        for b in a + 1..d {
            p.push(h[(a, b)].re);
            p.push(h[(a, b)].im);
        }
    }
    p
}

fn invariance_residual(images: &[CMatrix], j: &CMatrix) -> f64 {
    let scale = j.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    images
        .iter()
        .map(|m| (m.adjoint() * j * m - j).iter().map(|z| z.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
        / scale
}

fn positive_definite(j: &CMatrix) -> bool {
    let herm = (j + j.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigenvalues();
    let max = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    max > 0.0 && min > 1e-8 * max
}

fn normalized(j: CMatrix) -> CMatrix {
    let d = j.nrows() as f64;
    let tr = j.trace().re;
    j * Complex64::new(d / tr, 0.0)
}

/// Solves `M^* J M = J` for all images and returns a positive definite
/// solution (trace normalized to the degree) if one is found.
pub fn find_invariant_form(images: &[CMatrix]) -> Option<CMatrix> {
    let d = images.first()?.nrows();
    let np = d * d;
    let mut system = DMatrix::<f64>::zeros(np * images.len(), np);
    let mut unit = vec![0.0; np];
    for c in 0..np {
        unit[c] = 1.0;
        let h = hermitian_from_params(d, &unit);
        unit[c] = 0.0;
        for (k, m) in images.iter().enumerate() {
            let r = m.adjoint() * &h * m - &h;
            for (row, v) in hermitian_to_params(&r).into_iter().enumerate() {
                system[(k * np + row, c)] = v;
            }
        }
    }
    let svd = SVD::new(system, false, true);
    let v_t = svd.v_t?;
    let top = svd.singular_values.iter().cloned().fold(0.0, f64::max).max(1.0);
    let null: Vec<Vec<f64>> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] < NULL_TOL * top)
        .map(|k| v_t.row(k).iter().cloned().collect())
        .collect();
    if null.is_empty() {
        return None;
    }
    let forms: Vec<CMatrix> = null.iter().map(|p| hermitian_from_params(d, p)).collect();

    let mut candidates: Vec<CMatrix> = Vec::new();
    // orthogonal projection of the identity onto the solution space
    let id = hermitian_to_params(&CMatrix::identity(d, d));
    let mut proj = vec![0.0; np];
    for p in &null {
        let c: f64 = p.iter().zip(&id).map(|(a, b)| a * b).sum();
        for (x, y) in proj.iter_mut().zip(p) {
            *x += c * y;
        }
    }
    candidates.push(hermitian_from_params(d, &proj));
    for f in &forms {
        candidates.push(f.clone());
        candidates.push(-f.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let mut acc = CMatrix::zeros(d, d);
        for f in &forms {
            acc += f * Complex64::new(rng.random_range(-1.0..1.0), 0.0);
        }
        candidates.push(acc);
    }
    candidates
        .into_iter()
        .filter(|j| j.trace().re.abs() > 1e-12)
        .map(normalized)
        .find(|j| positive_definite(j) && invariance_residual(images, j) < 1e-8)
}

/// `L^* M L^{-*}` where `J = L L^*`; unitary exactly when `J` is invariant.
pub fn unitarize(images: &[CMatrix], form: &CMatrix) -> Option<Vec<CMatrix>> {
    let l = Cholesky::new(form.clone())?.l();
    let lstar = l.adjoint();
    let lstar_inv = float_inverse(&lstar).ok()?;
    Some(images.iter().map(|m| &lstar * m * &lstar_inv).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::unitarity_defect;

    #[test]
    fn unitary_images_give_identity_form() {
        let i = Complex64::new(0.0, 1.0);
        let m = CMatrix::from_row_slice(2, 2, &[i, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), -i]);
        let j = find_invariant_form(&[m]).unwrap();
        assert!((j - CMatrix::identity(2, 2)).norm() < 1e-9);
    }

    #[test]
    fn conjugated_unitary_is_unitarized() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let u = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let s = CMatrix::from_row_slice(2, 2, &[c(2.0), c(1.0), c(0.0), c(1.0)]);
        let m = &s * &u * float_inverse(&s).unwrap();
        assert!(unitarity_defect(&m) > 0.1);
        let j = find_invariant_form(std::slice::from_ref(&m)).unwrap();
        let us = unitarize(&[m], &j).unwrap();
        assert!(unitarity_defect(&us[0]) < 1e-9);
    }

    #[test]
    fn expanding_map_has_no_form() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let m = CMatrix::from_row_slice(2, 2, &[c(2.0), c(0.0), c(0.0), c(0.5)]);
        assert!(find_invariant_form(&[m]).is_none());
    }
}

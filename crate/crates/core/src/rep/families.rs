//! Constant, reduced Burau and Temperley–Lieb path-model representations.

use std::collections::HashMap;

use super::{GenRep, RepParams};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::matrix::{CycMatrix, Matrix};

/// Every generator maps to `m`.
pub fn constant_rep(n: usize, m: Matrix) -> Result<GenRep> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("braid group needs at least 2 strands, got {}", n)));
    }
    GenRep::new_unchecked(n, vec![m; n - 1], RepParams::named("constant"))
}

/// The reduced Burau representation of degree `n - 1`.
pub fn burau_reduced(n: usize, t: &CycNumber) -> Result<GenRep> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("braid group needs at least 2 strands, got {}", n)));
    }
    if t.is_zero() {
        return Err(Error::InvalidParameter("Burau parameter t must be nonzero".into()));
    }
    let d = n - 1;
    let neg_t = -t;
    let images = (0..d)
        .map(|k| {
            let mut m = CycMatrix::identity(d);
            m.set(k, k, neg_t.clone());
            if k > 0 {
                m.set(k, k - 1, t.clone());
            }
            if k + 1 < d {
                m.set(k, k + 1, CycNumber::one());
            }
            Matrix::Exact(m)
        })
        .collect();
    let params = RepParams { family: "burau".into(), parameter: Some(t.clone()), factor: None };
    GenRep::new(n, images, params)
}

/// Paths `0 = p_0, p_1, …, p_n = end` with unit steps staying in `0..=top`.
pub fn path_basis(n: usize, top: usize, end: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![0usize];
    fn extend(path: &mut Vec<usize>, n: usize, top: usize, end: usize, out: &mut Vec<Vec<usize>>) {
        let len = path.len() - 1;
        let h = *path.last().unwrap();
        if len == n {
            if h == end {
                out.push(path.clone());
            }
            return;
        }
        // prune paths that cannot reach `end` in the remaining steps
        if h.abs_diff(end) > n - len {
            return;
        }
        if h > 0 {
            path.push(h - 1);
            extend(path, n, top, end, out);
            path.pop();
        }
        if h < top {
            path.push(h + 1);
            extend(path, n, top, end, out);
            path.pop();
        }
    }
    extend(&mut path, n, top, end, &mut out);
    out.sort();
    out
}

/// The Temperley–Lieb/Jones path-model representation at a primitive
/// `ℓ`-th root of unity `q` (`ℓ >= 3`), for the two-row shape `(a, b)`.
///
/// Basis vectors are lattice paths from 0 to `a - b` of length `n` staying in
/// `0..=ℓ-2`. Each generator has eigenvalues `q` and `-1`.
pub fn jones_tl_rep(n: usize, q: &CycNumber, factor: (usize, usize)) -> Result<GenRep> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("braid group needs at least 2 strands, got {}", n)));
    }
    let ell = q
        .root_order()
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not a root of unity", q)))? as usize;
    if ell < 3 {
        return Err(Error::InvalidParameter(format!("q has order {}, need at least 3", ell)));
    }
    let (a, b) = factor;
    if a < b || a + b != n {
        return Err(Error::InvalidParameter(format!("shape ({},{}) is not a two-row partition of {}", a, b, n)));
    }
    let end = a - b;
    let top = ell - 2;
    if end > top {
        return Err(Error::InvalidParameter(format!(
            "shape ({},{}) is not admissible at a root of unity of order {}",
            a, b, ell
        )));
    }
    let paths = path_basis(n, top, end);
    let index: HashMap<&[usize], usize> = paths.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
    let d = paths.len();

    let one = CycNumber::one();
    let qpow = |e: i64| q.pow(e).expect("q is a root of unity");
    let degenerate = |e: Error| match e {
        Error::DivisionByZero => Error::InvalidParameter("degenerate quantum integer".into()),
        other => other,
    };
    let qm1 = q - &one;
    // diagonal entries on up and down turns, and the product of the two
    // off-diagonal couplings, indexed by the height r = j + 1
    let mut up_diag = Vec::with_capacity(top + 2);
    let mut down_diag = Vec::with_capacity(top + 2);
    let mut coupling = Vec::with_capacity(top + 2);
    for r in 0..=top + 1 {
        if r == 0 {
            up_diag.push(CycNumber::zero());
            down_diag.push(CycNumber::zero());
            coupling.push(CycNumber::zero());
            continue;
        }
        let qr = qpow(r as i64);
        let qmr = qpow(-(r as i64));
        let den_up = &one - &qr;
        let den_down = &one - &qmr;
        up_diag.push(qm1.checked_div(&den_up).map_err(degenerate)?);
        down_diag.push(qm1.checked_div(&den_down).map_err(degenerate)?);
        let num = &(q - &qr) * &(q - &qmr);
        coupling.push(num.checked_div(&(&den_up * &den_down)).map_err(degenerate)?);
    }

    let mut images = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut m = CycMatrix::zeros(d, d);
        for (k, p) in paths.iter().enumerate() {
            let (before, mid, after) = (p[i - 1], p[i], p[i + 1]);
            if before != after {
                m.set(k, k, q.clone());
                continue;
            }
            let j = before;
            let r = j + 1;
            let is_up = mid == j + 1;
            m.set(k, k, if is_up { up_diag[r].clone() } else { down_diag[r].clone() });
            if is_up && j == 0 {
                continue;
            }
            let mut partner = p.clone();
            partner[i] = if is_up { j - 1 } else { j + 1 };
            if let Some(&other) = index.get(partner.as_slice()) {
                let entry = if is_up { coupling[r].clone() } else { one.clone() };
                m.set(other, k, entry);
            }
        }
        images.push(Matrix::Exact(m));
    }
    let params = RepParams { family: "jones_tl".into(), parameter: Some(q.clone()), factor: Some(factor) };
    GenRep::new(n, images, params)
}

/// Two-row shapes of `n` admissible at a root of unity of order `ell`.
pub fn admissible_shapes(n: usize, ell: usize) -> Vec<(usize, usize)> {
    (0..=n / 2).map(|b| (n - b, b)).filter(|&(a, b)| ell >= 3 && a - b <= ell - 2).collect()
}

/// Representations used by the property and acceptance suites.
pub fn builtin_corpus() -> Vec<GenRep> {
    let mut out = Vec::new();
    let z = CycNumber::root_of_unity;
    for n in [3, 4, 6, 7] {
        out.push(constant_rep(n, Matrix::Exact(CycMatrix::scalar(1, &z(6, 1)))).expect("invertible"));
    }
    let rot = CycMatrix::from_rows(vec![
        vec![CycNumber::zero(), CycNumber::one()],
        vec![z(4, 1), CycNumber::zero()],
    ])
    .expect("square");
    out.push(constant_rep(5, Matrix::Exact(rot)).expect("invertible"));
    for n in [3, 4, 6] {
        out.push(burau_reduced(n, &CycNumber::one()).expect("nonzero t"));
    }
    out.push(burau_reduced(4, &CycNumber::from_integer(-1)).expect("nonzero t"));
    for n in [3, 4, 5, 6] {
        out.push(burau_reduced(n, &z(20, 1)).expect("nonzero t"));
    }
    for (ell, max_n) in [(4u32, 7usize), (6, 6), (10, 4)] {
        let q = z(ell, 1);
        for n in 3..=max_n {
            for shape in admissible_shapes(n, ell as usize) {
                out.push(jones_tl_rep(n, &q, shape).expect("admissible shape"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(m, k)
    }

    #[test]
    fn path_counts() {
        // unrestricted paths give Catalan-type counts
        assert_eq!(path_basis(4, 10, 0).len(), 2);
        assert_eq!(path_basis(6, 10, 0).len(), 5);
        assert_eq!(path_basis(5, 10, 1).len(), 5);
        // truncation at height 2
        assert_eq!(path_basis(6, 2, 0).len(), 4);
    }

    #[test]
    fn burau_relations_generic() {
        for n in 2..=6 {
            let rep = burau_reduced(n, &z(7, 2)).unwrap();
            assert_eq!(rep.degree(), n - 1);
            assert!(rep.verify_braid_relations(0.0));
        }
        let t = CycNumber::from_integer(3);
        assert!(burau_reduced(5, &t).unwrap().verify_braid_relations(0.0));
        assert!(matches!(burau_reduced(3, &CycNumber::zero()), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn jones_relations_and_dimensions() {
        let rep = jones_tl_rep(4, &z(4, 1), (2, 2)).unwrap();
        assert_eq!(rep.degree(), 2);
        assert!(rep.verify_braid_relations(0.0));
        let rep = jones_tl_rep(3, &z(10, 1), (2, 1)).unwrap();
        assert!(rep.verify_braid_relations(0.0));
        assert_eq!(rep.degree(), 2);
        let rep = jones_tl_rep(6, &z(6, 1), (3, 3)).unwrap();
        assert_eq!(rep.degree(), 5);
    }

    #[test]
    fn jones_eigenvalues_are_q_and_minus_one() {
        let q = z(10, 1);
        let rep = jones_tl_rep(5, &q, (3, 2)).unwrap();
        for img in rep.images() {
            let Matrix::Exact(m) = img else { panic!("exact mode expected") };
            let d = m.rows();
            let a = m.add(&CycMatrix::scalar(d, &-&q)).unwrap();
            let b = m.add(&CycMatrix::identity(d)).unwrap();
            assert!(a.mul(&b).unwrap().entries().iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn jones_parameter_checks() {
        assert!(matches!(jones_tl_rep(4, &z(4, 1), (4, 0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(jones_tl_rep(4, &z(4, 1), (1, 3)), Err(Error::InvalidParameter(_))));
        assert!(matches!(jones_tl_rep(4, &z(2, 1), (2, 2)), Err(Error::InvalidParameter(_))));
        assert!(matches!(jones_tl_rep(4, &CycNumber::from_integer(2), (2, 2)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn unitarity_flags() {
        assert!(jones_tl_rep(5, &z(4, 1), (3, 2)).unwrap().is_unitary());
        assert!(jones_tl_rep(4, &z(10, 1), (2, 2)).unwrap().is_unitary());
        assert!(burau_reduced(4, &z(20, 1)).unwrap().is_unitary());
        assert!(!burau_reduced(4, &CycNumber::from_integer(2)).unwrap().is_unitary());
    }

    #[test]
    fn constant_rep_is_constant() {
        let rep = constant_rep(6, Matrix::Exact(CycMatrix::scalar(1, &z(6, 1)))).unwrap();
        assert!(rep.is_constant());
        assert_eq!(rep.commuting_consecutive_pair(), Some(1));
        let rep = constant_rep(4, Matrix::Exact(CycMatrix::zeros(1, 1)));
        assert_eq!(rep.unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn corpus_is_well_formed() {
        for rep in builtin_corpus() {
            assert!(rep.verify_braid_relations(0.0), "{}", rep.params());
            assert_eq!(rep.is_constant(), rep.commuting_consecutive_pair().is_some(), "{}", rep.params());
        }
    }
}

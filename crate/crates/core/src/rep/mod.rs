//! Representations of `B_n` given by one invertible matrix per generator.

mod families;
mod form;
mod specfile;

use std::fmt;

use crate::braid::BraidWord;
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::matrix::{float_close, CMatrix, Matrix, FLOAT_TOL};

pub use families::{admissible_shapes, burau_reduced, builtin_corpus, constant_rep, jones_tl_rep, path_basis};
pub use form::{find_invariant_form, unitarize};
pub use specfile::{parse_rep_spec, RepSpec};

/// Where a representation came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepParams {
    pub family: String,
    pub parameter: Option<CycNumber>,
    pub factor: Option<(usize, usize)>,
}

impl RepParams {
    pub fn named(family: &str) -> Self {
        RepParams { family: family.to_string(), parameter: None, factor: None }
    }
}

impl fmt::Display for RepParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if let Some(p) = &self.parameter {
            write!(f, " param={}", p)?;
        }
        if let Some((a, b)) = self.factor {
            write!(f, " factor={},{}", a, b)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GenRep {
    strands: usize,
    degree: usize,
    images: Vec<Matrix>,
    inverses: Vec<Matrix>,
    params: RepParams,
    form: Option<CMatrix>,
}

impl GenRep {
    /// Builds a representation and certifies the braid relations (exactly, or
    /// within `FLOAT_TOL` in float mode).
    pub fn new(strands: usize, images: Vec<Matrix>, params: RepParams) -> Result<Self> {
        let rep = Self::new_unchecked(strands, images, params)?;
        if !rep.verify_braid_relations(FLOAT_TOL) {
            return Err(Error::Inconsistent("generator images violate the braid relations".into()));
        }
        Ok(rep)
    }

    /// Like [`GenRep::new`] but skips the relation check. Shapes, mode and
    /// invertibility are still validated.
    pub fn new_unchecked(strands: usize, images: Vec<Matrix>, params: RepParams) -> Result<Self> {
        if strands < 2 {
            return Err(Error::IndexOutOfRange(format!("braid group needs at least 2 strands, got {}", strands)));
        }
        if images.len() != strands - 1 {
            return Err(Error::ShapeMismatch(format!("{} images for {} strands", images.len(), strands)));
        }
        let (degree, cols) = images[0].shape();
        if degree != cols || degree == 0 {
            return Err(Error::ShapeMismatch(format!("generator image is {}x{}", degree, cols)));
        }
        let exact = images[0].is_exact();
        for m in &images {
            if m.shape() != (degree, degree) {
                return Err(Error::ShapeMismatch(format!("images of sizes {}x{} and {:?}", degree, degree, m.shape())));
            }
            if m.is_exact() != exact {
                return Err(Error::ModeMismatch);
            }
        }
        let inverses = images.iter().map(|m| m.inverse()).collect::<Result<Vec<_>>>()?;
        let floats: Vec<CMatrix> = images.iter().map(|m| m.to_float()).collect();
        let form = find_invariant_form(&floats);
        Ok(GenRep { strands, degree, images, inverses, params, form })
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

    /// Image of `x_i`, 1-based.
    pub fn image(&self, i: usize) -> Result<&Matrix> {
        if i == 0 || i >= self.strands {
            return Err(Error::IndexOutOfRange(format!("generator {} of B_{}", i, self.strands)));
        }
        Ok(&self.images[i - 1])
    }

    pub fn params(&self) -> &RepParams {
        &self.params
    }

    pub fn is_exact(&self) -> bool {
        self.images[0].is_exact()
    }

    /// Whether a positive definite invariant Hermitian form was found.
    pub fn is_unitary(&self) -> bool {
        self.form.is_some()
    }

    pub fn invariant_form(&self) -> Option<&CMatrix> {
        self.form.as_ref()
    }

    pub fn float_images(&self) -> Vec<CMatrix> {
        self.images.iter().map(|m| m.to_float()).collect()
    }

    /// Generator images in an orthonormal basis for the invariant form.
    pub fn unitary_images(&self) -> Option<Vec<CMatrix>> {
        let form = self.form.as_ref()?;
        unitarize(&self.float_images(), form)
    }

    /// The same representation with float entries.
    pub fn to_float(&self) -> GenRep {
        GenRep {
            strands: self.strands,
            degree: self.degree,
            images: self.images.iter().map(|m| Matrix::Float(m.to_float())).collect(),
            inverses: self.inverses.iter().map(|m| Matrix::Float(m.to_float())).collect(),
            params: self.params.clone(),
            form: self.form.clone(),
        }
    }

    pub fn identity_matrix(&self) -> Matrix {
        self.images[0].identity_like()
    }

    pub fn evaluate_word(&self, w: &BraidWord) -> Result<Matrix> {
        if w.strands() != self.strands {
            return Err(Error::StrandMismatch(w.strands(), self.strands));
        }
        let mut acc = self.identity_matrix();
        for &l in w.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let g = if l > 0 { &self.images[i] } else { &self.inverses[i] };
            acc = acc.mul(g)?;
        }
        Ok(acc)
    }

    fn same(&self, a: &Matrix, b: &Matrix, tol: f64) -> bool {
        match (a, b) {
            (Matrix::Float(x), Matrix::Float(y)) => {
                let scale = x.iter().chain(y.iter()).map(|z| z.norm()).fold(1.0, f64::max);
                float_close(x, y, tol * scale)
            }
            _ => a.approx_eq(b, tol),
        }
    }

    /// Checks `x_i x_{i+1} x_i = x_{i+1} x_i x_{i+1}` and far commutation.
    pub fn verify_braid_relations(&self, tol: f64) -> bool {
        let k = self.images.len();
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (&self.images[i], &self.images[j]);
                let ok = if j == i + 1 {
                    let lhs = a.mul(b).and_then(|x| x.mul(a));
                    let rhs = b.mul(a).and_then(|x| x.mul(b));
                    matches!((lhs, rhs), (Ok(l), Ok(r)) if self.same(&l, &r, tol))
                } else {
                    let lhs = a.mul(b);
                    let rhs = b.mul(a);
                    matches!((lhs, rhs), (Ok(l), Ok(r)) if self.same(&l, &r, tol))
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// True iff all generator images coincide.
    pub fn is_constant(&self) -> bool {
        self.images.windows(2).all(|w| self.same(&w[0], &w[1], FLOAT_TOL))
    }

    /// First `i` (1-based) such that the images of `x_i` and `x_{i+1}` commute.
    pub fn commuting_consecutive_pair(&self) -> Option<usize> {
        (0..self.images.len().saturating_sub(1)).find_map(|i| {
            let (a, b) = (&self.images[i], &self.images[i + 1]);
            match (a.mul(b), b.mul(a)) {
                (Ok(l), Ok(r)) if self.same(&l, &r, FLOAT_TOL) => Some(i + 1),
                _ => None,
            }
        })
    }

    /// Replaces one generator image without re-checking relations.
    pub fn with_image_unchecked(&self, i: usize, m: Matrix) -> Result<GenRep> {
        let mut images = self.images.clone();
        if i == 0 || i >= self.strands {
            return Err(Error::IndexOutOfRange(format!("generator {} of B_{}", i, self.strands)));
        }
        images[i - 1] = m;
        GenRep::new_unchecked(self.strands, images, self.params.clone())
    }
}

pub fn evaluate_word(rep: &GenRep, w: &BraidWord) -> Result<Matrix> {
    rep.evaluate_word(w)
}

pub fn verify_braid_relations(rep: &GenRep, tol: f64) -> bool {
    rep.verify_braid_relations(tol)
}

pub fn is_constant(rep: &GenRep) -> bool {
    rep.is_constant()
}

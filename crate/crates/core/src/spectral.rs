//! Intersection sequences `dim W ∩ T(W) ∩ ⋯ ∩ T^{k-1}(W)`, weak convexity,
//! translation of generator eigenspaces, and degree windows by level.

use std::fmt;

use num_complex::Complex64;

use crate::braid::ascending_run;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::rep::GenRep;
use crate::subspace::{eigenspace, subspace_meet, Subspace};

/// Absolute gap below which computed eigenvalues are merged.
pub const EIGEN_CLUSTER_GAP: f64 = 1e-6;
const EIGENSPACE_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionSequence {
    pub lambda: Option<Complex64>,
    pub ambient: usize,
    /// `d_0, d_1, …, d_K`.
    pub dims: Vec<usize>,
}

impl IntersectionSequence {
    pub fn from_dims(ambient: usize, dims: Vec<usize>) -> Self {
        IntersectionSequence { lambda: None, ambient, dims }
    }

    /// Largest index `K`.
    pub fn len_k(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }
}

impl fmt::Display for IntersectionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `d_0 = ambient`, `d_1 = dim W`, and `d_k = dim(W ∩ T(W) ∩ ⋯ ∩ T^{k-1}(W))` up to `k = K`.
pub fn intersection_sequence(w: &Subspace, t: &CMatrix, k_max: usize, tol: f64) -> Result<IntersectionSequence> {
    if t.nrows() != t.ncols() || t.nrows() != w.ambient() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} operator on a subspace of C^{}",
            t.nrows(),
            t.ncols(),
            w.ambient()
        )));
    }
    if k_max < 1 {
        return Err(Error::InvalidParameter("sequence length K must be at least 1".into()));
    }
    let mut dims = vec![w.ambient(), w.dim()];
    let mut meet = w.clone();
    let mut shifted = w.clone();
    for _ in 2..=k_max {
        shifted = shifted.image(t)?;
        meet = subspace_meet(&meet, &shifted, tol)?;
        dims.push(meet.dim());
    }
    Ok(IntersectionSequence { lambda: None, ambient: w.ambient(), dims })
}

/// `d_1 - d_2 ≥ d_2 - d_3 ≥ ⋯`.
pub fn is_weakly_convex(s: &IntersectionSequence) -> bool {
    let d: Vec<i64> = s.dims.iter().map(|&x| x as i64).collect();
    if d.len() < 4 {
        return true;
    }
    (1..d.len() - 2).all(|k| d[k] - d[k + 1] >= d[k + 1] - d[k + 2])
}

/// Returns `s = d_{j+1} - d_j` after certifying
/// `(d_j - d_i)/(j - i) ≤ s ≤ (d_k - d_j)/(k - j)` by exact integer arithmetic.
/// Indices satisfy `1 ≤ i < j < k ≤ K`.
pub fn mean_slope_witness(s: &IntersectionSequence, i: usize, j: usize, k: usize) -> Result<i64> {
    let kk = s.len_k();
    if !(1 <= i && i < j && j < k && k <= kk) {
        return Err(Error::IndexOutOfRange(format!("need 1 <= i < j < k <= {}, got ({}, {}, {})", kk, i, j, k)));
    }
    if !is_weakly_convex(s) {
        return Err(Error::NotConvex);
    }
    let d = |x: usize| s.dims[x] as i64;
    let slope = d(j + 1) - d(j);
    let lower_ok = d(j) - d(i) <= slope * (j - i) as i64;
    let upper_ok = slope * (k - j) as i64 <= d(k) - d(j);
    if lower_ok && upper_ok {
        Ok(slope)
    } else {
        Err(Error::NotConvex)
    }
}

/// Eigenvalues from a Schur decomposition, merged when closer than `EIGEN_CLUSTER_GAP`.
pub fn clustered_eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    let raw = m.clone().schur().eigenvalues().map(|v| v.iter().cloned().collect::<Vec<_>>()).unwrap_or_default();
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for z in raw {
        match clusters.iter_mut().find(|(c, k)| (*c / *k as f64 - z).norm() < EIGEN_CLUSTER_GAP) {
            Some((c, k)) => {
                *c += z;
                *k += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    let mut out: Vec<Complex64> = clusters.into_iter().map(|(c, k)| c / k as f64).collect();
    out.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap().then(a.norm().partial_cmp(&b.norm()).unwrap()));
    out
}

fn unitary_generators(rep: &GenRep) -> Result<Vec<CMatrix>> {
    rep.unitary_images().ok_or(Error::NotUnitary)
}

/// Distinct eigenvalues of the image of `x_1` in an orthonormal frame.
pub fn generator_spectrum(rep: &GenRep) -> Result<Vec<Complex64>> {
    let gens = unitary_generators(rep)?;
    Ok(clustered_eigenvalues(&gens[0]))
}

/// The shift element `T = φ(x_1 x_2 ⋯ x_{n-1})` in an orthonormal frame.
pub fn shift_operator(rep: &GenRep) -> Result<CMatrix> {
    let gens = unitary_generators(rep)?;
    let word = ascending_run(1, rep.strands() - 1, rep.strands())?;
    let mut t = CMatrix::identity(rep.degree(), rep.degree());
    for &l in word.letters() {
        t *= &gens[l as usize - 1];
    }
    Ok(t)
}

/// Largest subspace distance between the `λ`-eigenspace of `φ(x_k)` and
/// `T^{k-1}(W^λ)` over `k = 1, …, n-1`.
pub fn eigenspace_translation_defect(rep: &GenRep, lambda: Complex64) -> Result<f64> {
    let gens = unitary_generators(rep)?;
    let t = shift_operator(rep)?;
    let base = eigenspace(&gens[0], lambda, EIGENSPACE_TOL)?;
    if base.dim() == 0 {
        return Err(Error::InvalidParameter(format!("{} is not an eigenvalue of the first generator", lambda)));
    }
    let mut moved = base;
    let mut worst: f64 = 0.0;
    for (k, g) in gens.iter().enumerate() {
        if k > 0 {
            moved = moved.image(&t)?;
        }
        let direct = eigenspace(g, lambda, EIGENSPACE_TOL)?;
        worst = worst.max(direct.distance(&moved));
    }
    Ok(worst)
}

pub fn eigenspace_translation_check(rep: &GenRep, lambda: Complex64, tol: f64) -> Result<bool> {
    Ok(eigenspace_translation_defect(rep, lambda)? < tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelQuery {
    pub n: usize,
    pub m: usize,
    pub l: usize,
}

impl LevelQuery {
    pub fn new(n: usize, m: usize, l: usize) -> Result<Self> {
        if n < 2 || m < 1 || l < 1 {
            return Err(Error::InvalidParameter(format!("need n >= 2, m >= 1, l >= 1, got ({}, {}, {})", n, m, l)));
        }
        Ok(LevelQuery { n, m, l })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Level {
    Level(usize),
    None,
    Ambiguous(Vec<usize>),
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Level(k) => write!(f, "{}", k),
            Level::None => write!(f, "none"),
            Level::Ambiguous(ks) => {
                let parts: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                write!(f, "ambiguous {}", parts.join(","))
            }
        }
    }
}

/// Degree window of level `k`: `{1}` for `k = 0`, else `[kn - (k² + 3k - 2), kn]`.
pub fn level_window(n: usize, k: usize) -> (i64, i64) {
    if k == 0 {
        return (1, 1);
    }
    let (n, k) = (n as i64, k as i64);
    (k * n - (k * k + 3 * k - 2), k * n)
}

pub fn level_of(q: &LevelQuery) -> Level {
    let m = q.m as i64;
    let hits: Vec<usize> = (0..=q.l)
        .filter(|&k| {
            let (lo, hi) = level_window(q.n, k);
            lo <= m && m <= hi
        })
        .collect();
    match hits.len() {
        0 => Level::None,
        1 => Level::Level(hits[0]),
        _ => Level::Ambiguous(hits),
    }
}

/// Whether the windows of levels `0..=l`, restricted to positive degrees, are pairwise disjoint.
pub fn window_disjointness(n: usize, l: usize) -> bool {
    let windows: Vec<(i64, i64)> =
        (0..=l).map(|k| level_window(n, k)).map(|(lo, hi)| (lo.max(1), hi)).filter(|(lo, hi)| lo <= hi).collect();
    for a in 0..windows.len() {
        for b in a + 1..windows.len() {
            let (x, y) = (windows[a], windows[b]);
            if x.0 <= y.1 && y.0 <= x.1 {
                return false;
            }
        }
    }
    true
}

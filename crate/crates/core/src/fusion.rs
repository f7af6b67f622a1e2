//! Fusion rings: validation, Perron–Frobenius dimensions, exact
//! multiplicities of simple objects in tensor powers, and the exponential
//! growth bound.
//!
//! `N_i[j][k]` is the multiplicity of `X_k` in `X_i ⊗ X_j`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const PF_MAX_ITERATIONS: usize = 100_000;
pub const PF_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    matrices: Vec<Vec<Vec<u64>>>,
    dual: Vec<usize>,
}

fn axiom(name: &str, detail: String) -> Error {
    Error::AxiomViolation(format!("{}: {}", name, detail))
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let r = a.len();
    let mut out = vec![vec![0u64; r]; r];
    for i in 0..r {
        for k in 0..r {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..r {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn transpose(a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let r = a.len();
    (0..r).map(|i| (0..r).map(|j| a[j][i]).collect()).collect()
}

impl FusionRing {
    /// Validates the ring axioms; the failing axiom is named in the error.
    pub fn new(labels: Vec<String>, unit: usize, matrices: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(axiom("shape", "rank must be positive".into()));
        }
        if unit >= r {
            return Err(axiom("unit", format!("unit index {} out of range", unit)));
        }
        if matrices.len() != r || matrices.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
            return Err(axiom("shape", format!("expected {} matrices of size {}x{}", r, r, r)));
        }
        for j in 0..r {
            for k in 0..r {
                if matrices[unit][j][k] != u64::from(j == k) {
                    return Err(axiom("unit", "fusion matrix of the unit is not the identity".into()));
                }
            }
        }
        for a in 0..r {
            for b in a + 1..r {
                if mat_mul(&matrices[a], &matrices[b]) != mat_mul(&matrices[b], &matrices[a]) {
                    return Err(axiom("commutativity", format!("N_{} and N_{} do not commute", a, b)));
                }
            }
        }
        let mut dual = vec![0; r];
        for i in 0..r {
            let candidates: Vec<usize> = (0..r).filter(|&j| matrices[i][j][unit] > 0).collect();
            match candidates.as_slice() {
                [j] if matrices[i][*j][unit] == 1 => dual[i] = *j,
                _ => return Err(axiom("duality", format!("X_{} has no unique dual", i))),
            }
        }
        for i in 0..r {
            if dual[dual[i]] != i {
                return Err(axiom("duality", format!("duality is not an involution at X_{}", i)));
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if matrices[i][j][k] != matrices[dual[i]][k][j] {
                        return Err(axiom("symmetry", format!("N_{}[{}][{}] differs from N_{}[{}][{}]", i, j, k, dual[i], k, j)));
                    }
                }
            }
        }
        // left multiplication by X_i acts on coefficient columns as N_i^T
        let left: Vec<Vec<Vec<u64>>> = matrices.iter().map(|m| transpose(m)).collect();
        for i in 0..r {
            for j in 0..r {
                let lhs = mat_mul(&left[i], &left[j]);
                let mut rhs = vec![vec![0u64; r]; r];
                for k in 0..r {
                    let c = matrices[i][j][k];
                    if c == 0 {
                        continue;
                    }
                    for (row, lrow) in rhs.iter_mut().zip(&left[k]) {
                        for (x, y) in row.iter_mut().zip(lrow) {
                            *x += c * y;
                        }
                    }
                }
                if lhs != rhs {
                    return Err(axiom("associativity", format!("(X_{} X_{}) X_k differs from X_{} (X_{} X_k)", i, j, i, j)));
                }
            }
        }
        // the fusion graph of M = Σ N_i must be strongly connected
        let mut reach = vec![false; r];
        reach[unit] = true;
        let mut stack = vec![unit];
        while let Some(j) = stack.pop() {
            for k in 0..r {
                if !reach[k] && matrices.iter().any(|m| m[j][k] > 0) {
                    reach[k] = true;
                    stack.push(k);
                }
            }
        }
        if reach.iter().any(|&x| !x) {
            return Err(axiom("irreducibility", "fusion graph is not connected".into()));
        }
        Ok(FusionRing { labels, unit, matrices, dual })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn matrix(&self, i: usize) -> &[Vec<u64>] {
        &self.matrices[i]
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual.iter().enumerate().all(|(i, &d)| i == d)
    }

    /// Index given as a number, or else as a label.
    pub fn index_of(&self, name: &str) -> Result<usize> {
        match name.parse::<usize>() {
            Ok(i) if i < self.rank() => return Ok(i),
            Ok(i) => return Err(Error::IndexOutOfRange(format!("index {} in a ring of rank {}", i, self.rank()))),
            Err(_) => {}
        }
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::IndexOutOfRange(format!("no simple object '{}'", name)))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange(format!("index {} in a ring of rank {}", i, self.rank())));
        }
        Ok(())
    }

    /// The product ring with simple objects `(a, b)`.
    pub fn tensor(&self, other: &FusionRing) -> Result<FusionRing> {
        let (r, s) = (self.rank(), other.rank());
        let idx = |a: usize, b: usize| a * s + b;
        let mut labels = Vec::with_capacity(r * s);
        for a in 0..r {
            for b in 0..s {
                labels.push(format!("{}.{}", self.labels[a], other.labels[b]));
            }
        }
        let mut matrices = vec![vec![vec![0u64; r * s]; r * s]; r * s];
        for a in 0..r {
            for b in 0..s {
                for c in 0..r {
                    for d in 0..s {
                        for e in 0..r {
                            for f in 0..s {
                                matrices[idx(a, b)][idx(c, d)][idx(e, f)] =
                                    self.matrices[a][c][e] * other.matrices[b][d][f];
                            }
                        }
                    }
                }
            }
        }
        FusionRing::new(labels, idx(self.unit, other.unit), matrices)
    }

    /// Serializes in the text format accepted by [`parse_ring`].
    pub fn to_text(&self) -> String {
        let mut s = format!("rank {}\nlabels {}\nunit {}\n", self.rank(), self.labels.join(" "), self.unit);
        for (i, m) in self.matrices.iter().enumerate() {
            s.push_str(&format!("N {}\n", i));
            for row in m {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                s.push_str(&cells.join(" "));
                s.push('\n');
            }
        }
        s
    }
}

impl fmt::Display for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Parses the line-oriented ring format:
///
/// ```text
/// rank 2
/// labels 1 tau
/// unit 0
/// N 0
/// 1 0
/// 0 1
/// N 1
/// 0 1
/// 1 1
/// ```
pub fn parse_ring(text: &str) -> Result<FusionRing> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect();
    let err = |line: usize, msg: String| Error::ParseError { line, msg };
    let mut pos = 0;
    let expect_key = |key: &str, pos: &mut usize| -> Result<(usize, Vec<&str>)> {
        let (line, toks) = lines.get(*pos).ok_or_else(|| err(0, format!("missing '{}' line", key)))?;
        *pos += 1;
        if toks[0] != key {
            return Err(err(*line, format!("expected '{}', found '{}'", key, toks[0])));
        }
        Ok((*line, toks[1..].to_vec()))
    };
    let (line, rest) = expect_key("rank", &mut pos)?;
    let rank: usize = match rest.as_slice() {
        [r] => r.parse().map_err(|_| err(line, format!("bad rank '{}'", r)))?,
        _ => return Err(err(line, "rank takes one integer".into())),
    };
    if rank == 0 {
        return Err(err(line, "rank must be positive".into()));
    }
    let (line, labels) = expect_key("labels", &mut pos)?;
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    if labels.len() != rank {
        return Err(err(line, format!("expected {} labels, found {}", rank, labels.len())));
    }
    let (line, rest) = expect_key("unit", &mut pos)?;
    let unit: usize = match rest.as_slice() {
        [u] => u.parse().map_err(|_| err(line, format!("bad unit index '{}'", u)))?,
        _ => return Err(err(line, "unit takes one integer".into())),
    };
    let mut matrices: Vec<Option<Vec<Vec<u64>>>> = vec![None; rank];
    for _ in 0..rank {
        let (line, rest) = expect_key("N", &mut pos)?;
        let i: usize = match rest.as_slice() {
            [i] => i.parse().map_err(|_| err(line, format!("bad matrix index '{}'", i)))?,
            _ => return Err(err(line, "N takes one index".into())),
        };
        if i >= rank {
            return Err(err(line, format!("matrix index {} out of range", i)));
        }
        if matrices[i].is_some() {
            return Err(err(line, format!("matrix {} given twice", i)));
        }
        let mut m = Vec::with_capacity(rank);
        for _ in 0..rank {
            let (line, toks) = lines.get(pos).ok_or_else(|| err(0, format!("matrix {} is truncated", i)))?;
            let line = *line;
            pos += 1;
            if toks.len() != rank {
                return Err(err(line, format!("expected {} entries, found {}", rank, toks.len())));
            }
            let row = toks
                .iter()
                .map(|t| t.parse::<u64>().map_err(|_| err(line, format!("bad entry '{}'", t))))
                .collect::<Result<Vec<_>>>()?;
            m.push(row);
        }
        matrices[i] = Some(m);
    }
    if let Some((line, _)) = lines.get(pos) {
        return Err(err(*line, "unexpected trailing content".into()));
    }
    let matrices: Vec<Vec<Vec<u64>>> = matrices.into_iter().map(|m| m.expect("all matrices read")).collect();
    FusionRing::new(labels, unit, matrices)
}

fn ring_from_rules(labels: &[&str], rules: &[(usize, usize, &[usize])]) -> FusionRing {
    let r = labels.len();
    let mut m = vec![vec![vec![0u64; r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            if i == 0 {
                m[i][j][j] = 1;
            }
            if j == 0 {
                m[i][j][i] = 1;
            }
        }
    }
    for &(a, b, out) in rules {
        for &k in out {
            m[a][b][k] += 1;
            if a != b {
                m[b][a][k] += 1;
            }
        }
    }
    FusionRing::new(labels.iter().map(|s| s.to_string()).collect(), 0, m).expect("built-in rules are valid")
}

pub fn fibonacci() -> FusionRing {
    ring_from_rules(&["1", "tau"], &[(1, 1, &[0, 1])])
}

pub fn ising() -> FusionRing {
    ring_from_rules(&["1", "sigma", "psi"], &[(1, 1, &[0, 2]), (1, 2, &[1]), (2, 2, &[0])])
}

/// Representation ring of the symmetric group on three letters.
pub fn rep_s3() -> FusionRing {
    ring_from_rules(&["1", "sign", "std"], &[(1, 1, &[0]), (1, 2, &[2]), (2, 2, &[0, 1, 2])])
}

/// Group ring of `Z/nZ`.
pub fn cyclic(n: usize) -> Result<FusionRing> {
    if n == 0 {
        return Err(Error::InvalidParameter("Z_n needs n >= 1".into()));
    }
    let labels = (0..n).map(|g| g.to_string()).collect();
    let matrices = (0..n)
        .map(|g| (0..n).map(|j| (0..n).map(|k| u64::from(k == (g + j) % n)).collect()).collect())
        .collect();
    FusionRing::new(labels, 0, matrices)
}

/// `fibonacci`, `ising`, `rep_s3`, or `Z_n`.
pub fn builtin(name: &str) -> Result<FusionRing> {
    match name {
        "fibonacci" => Ok(fibonacci()),
        "ising" => Ok(ising()),
        "rep_s3" => Ok(rep_s3()),
        _ => {
            if let Some(n) = name.strip_prefix("Z_") {
                let n: usize = n.parse().map_err(|_| Error::InvalidParameter(format!("unknown ring '{}'", name)))?;
                cyclic(n)
            } else {
                Err(Error::InvalidParameter(format!("unknown ring '{}'", name)))
            }
        }
    }
}

/// Strictly positive common eigenvector of all `N_i`, normalized to unit length.
pub fn pf_vector(ring: &FusionRing, tol: f64) -> Result<Vec<f64>> {
    let r = ring.rank();
    let mut total = vec![vec![0.0f64; r]; r];
    for m in &ring.matrices {
        for j in 0..r {
            for k in 0..r {
                total[j][k] += m[j][k] as f64;
            }
        }
    }
    let mut v = vec![1.0 / (r as f64).sqrt(); r];
    for _ in 0..PF_MAX_ITERATIONS {
        let mut w: Vec<f64> = (0..r).map(|j| (0..r).map(|k| total[j][k] * v[k]).sum()).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        w.iter_mut().for_each(|x| *x /= norm);
        let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if delta < tol {
            return Ok(v);
        }
    }
    Err(Error::NonConvergence(PF_MAX_ITERATIONS))
}

/// Largest eigenvalue `d_i` of `N_i`, as the Rayleigh quotient on the common PF vector.
pub fn pf_dimension(ring: &FusionRing, i: usize, tol: f64) -> Result<f64> {
    ring.check_index(i)?;
    let v = pf_vector(ring, tol)?;
    let r = ring.rank();
    let m = &ring.matrices[i];
    let nv: Vec<f64> = (0..r).map(|j| (0..r).map(|k| m[j][k] as f64 * v[k]).sum()).collect();
    let d = nv.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() / v.iter().map(|x| x * x).sum::<f64>();
    if d < 1.0 - 1e-9 {
        return Err(Error::Inconsistent(format!("Perron-Frobenius dimension {} of X_{} is below 1", d, i)));
    }
    Ok(d)
}

/// `D = max_i d_i`.
pub fn global_dim_bound(ring: &FusionRing) -> Result<f64> {
    let mut best: f64 = 0.0;
    for i in 0..ring.rank() {
        best = best.max(pf_dimension(ring, i, PF_TOL)?);
    }
    Ok(best)
}

/// Multiplicities of every simple object in `X_i^{⊗n}`.
pub fn hom_vector(ring: &FusionRing, i: usize, n: usize) -> Result<Vec<BigUint>> {
    ring.check_index(i)?;
    if n == 0 {
        return Err(Error::InvalidParameter("tensor power must be at least 1".into()));
    }
    let r = ring.rank();
    let m = &ring.matrices[i];
    let mut v: Vec<BigUint> = (0..r).map(|k| BigUint::from(u32::from(k == i))).collect();
    for _ in 1..n {
        // multiplicity of X_j in X_i ⊗ (Σ_k v_k X_k) is Σ_k v_k N_i[k][j]
        let mut w = vec![BigUint::zero(); r];
        for (k, vk) in v.iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            for j in 0..r {
                if m[k][j] != 0 {
                    w[j] += vk * m[k][j];
                }
            }
        }
        v = w;
    }
    Ok(v)
}

/// `dim Hom(X_j, X_i^{⊗n})`.
pub fn hom_dim(ring: &FusionRing, j: usize, i: usize, n: usize) -> Result<BigUint> {
    ring.check_index(j)?;
    Ok(hom_vector(ring, i, n)?.swap_remove(j))
}

/// `dim End(X_i^{⊗n}) = Σ_j dim Hom(X_j, X_i^{⊗n})²`.
pub fn end_dim(ring: &FusionRing, i: usize, n: usize) -> Result<BigUint> {
    Ok(hom_vector(ring, i, n)?.iter().map(|h| h * h).sum())
}

/// `Σ_j dim Hom(X_j, X_i^{⊗n})`, the number of simple summands with multiplicity.
pub fn total_hom_dim(ring: &FusionRing, i: usize, n: usize) -> Result<BigUint> {
    Ok(hom_vector(ring, i, n)?.into_iter().sum())
}

/// Checks `dim Hom(X_j, X_i^{⊗n}) ≤ D^n (1 + 1e-9)` for `n = 1, …, nmax`.
pub fn growth_bound_check(ring: &FusionRing, i: usize, j: usize, nmax: usize) -> Result<bool> {
    ring.check_index(j)?;
    let d = global_dim_bound(ring)?;
    for n in 1..=nmax {
        let h = hom_dim(ring, j, i, n)?.to_f64().unwrap_or(f64::INFINITY);
        if h > d.powi(n as i32) * (1.0 + 1e-9) {
            return Ok(false);
        }
    }
    Ok(true)
}

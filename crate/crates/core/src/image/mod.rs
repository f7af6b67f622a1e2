//! Finite images of braid group representations: exact closure enumeration,
//! derived series, the solvable-image constancy audit, order-based
//! classification hints and constancy thresholds.

mod classify;
mod packed;
mod thresholds;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix::{CycMatrix, Matrix};
use crate::rep::GenRep;
use packed::{GroupElem, PackedCtx, PackedMat, Store};

pub use classify::{classify_candidates, symplectic_order, Candidate, CandidateKind};
pub use thresholds::{rootbound_threshold, sporadic_threshold};

pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite group enumerated from generator matrices.
struct Enumerated<E: GroupElem> {
    store: Store<E>,
    identity: usize,
    gens: Vec<usize>,
    radius: usize,
}

enum Inner {
    Packed(Enumerated<PackedMat>),
    Big(Enumerated<CycMatrix>),
}

/// Breadth-first closure; `Ok(None)` when packed arithmetic overflows.
fn enumerate<E: GroupElem>(ctx: E::Ctx, identity: E, gens: Vec<E>, cap: usize) -> Result<Option<Enumerated<E>>> {
    let mut store = Store::new(ctx);
    let (id_idx, _) = store.insert(identity);
    let mut gen_idx = Vec::with_capacity(gens.len());
    let mut frontier: Vec<usize> = vec![id_idx];
    let mut radius = 0;
    for g in &gens {
        let (i, fresh) = store.insert(g.clone());
        gen_idx.push(i);
        if fresh {
            frontier.push(i);
            radius = 1;
        }
    }
    if store.len() > cap {
        return Err(Error::CapExceeded(cap));
    }
    let mut depth = 1;
    let mut queue: VecDeque<usize> = frontier.into_iter().skip(1).collect();
    while !queue.is_empty() {
        depth += 1;
        let mut next = VecDeque::new();
        while let Some(e) = queue.pop_front() {
            for g in &gens {
                let Some(p) = store.elems[e].mul(g, &store.ctx) else { return Ok(None) };
                let (i, fresh) = store.insert(p);
                if fresh {
                    if store.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    next.push_back(i);
                    radius = depth;
                }
            }
        }
        queue = next;
    }
    Ok(Some(Enumerated { store, identity: id_idx, gens: gen_idx, radius }))
}

impl<E: GroupElem> Enumerated<E> {
    fn mul_idx(&self, a: usize, b: usize) -> Result<usize> {
        let p = self.store.elems[a]
            .mul(&self.store.elems[b], &self.store.ctx)
            .ok_or_else(|| Error::Inconsistent("overflow multiplying group elements".into()))?;
        self.store.find(&p).ok_or_else(|| Error::Inconsistent("product escaped the enumerated group".into()))
    }

    fn inverse_idx(&self, a: usize) -> Result<usize> {
        let mut x = a;
        loop {
            let y = self.mul_idx(x, a)?;
            if y == self.identity {
                return Ok(x);
            }
            x = y;
        }
    }

    /// Membership mask and size of the subgroup generated by `gens`.
    fn subgroup(&self, gens: &[usize]) -> Result<(Vec<bool>, usize)> {
        let mut member = vec![false; self.store.len()];
        member[self.identity] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let p = self.mul_idx(e, g)?;
                if !member[p] {
                    member[p] = true;
                    count += 1;
                    queue.push_back(p);
                }
            }
        }
        Ok((member, count))
    }

    fn commutator(&self, a: usize, b: usize) -> Result<usize> {
        let ab = self.mul_idx(a, b)?;
        let ia = self.inverse_idx(a)?;
        let ib = self.inverse_idx(b)?;
        self.mul_idx(self.mul_idx(ab, ia)?, ib)
    }

    /// Generators of the derived subgroup of `<gens>`, with its order.
    fn derived_step(&self, gens: &[usize]) -> Result<(Vec<usize>, usize)> {
        let mut ngens: Vec<usize> = Vec::new();
        for (x, &a) in gens.iter().enumerate() {
            for &b in &gens[x + 1..] {
                let c = self.commutator(a, b)?;
                if c != self.identity && !ngens.contains(&c) {
                    ngens.push(c);
                }
            }
        }
        let (mut member, mut size) = self.subgroup(&ngens)?;
        let inverses: Vec<usize> = gens.iter().map(|&h| self.inverse_idx(h)).collect::<Result<_>>()?;
        loop {
            let mut added = false;
            let snapshot = ngens.clone();
            for (&h, &hi) in gens.iter().zip(&inverses) {
                for &x in &snapshot {
                    let c = self.mul_idx(self.mul_idx(h, x)?, hi)?;
                    if !member[c] {
                        ngens.push(c);
                        let (m, s) = self.subgroup(&ngens)?;
                        member = m;
                        size = s;
                        added = true;
                    }
                }
            }
            if !added {
                return Ok((ngens, size));
            }
        }
    }

    fn derived_orders(&self) -> Result<Vec<usize>> {
        let mut series = vec![self.store.len()];
        let mut gens = self.gens.clone();
        loop {
            let (next, size) = self.derived_step(&gens)?;
            if size == *series.last().unwrap() {
                return Ok(series);
            }
            series.push(size);
            if size == 1 {
                return Ok(series);
            }
            gens = next;
        }
    }

    fn elements(&self) -> Vec<CycMatrix> {
        self.store.elems.iter().map(|e| e.to_cyc(&self.store.ctx)).collect()
    }
}

/// The finite image of a representation, enumerated exactly.
pub struct ClosureGroup {
    generators: Vec<CycMatrix>,
    conductor: u32,
    cap: usize,
    source_constant: Option<bool>,
    inner: Inner,
}

impl fmt::Debug for ClosureGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureGroup")
            .field("order", &self.order())
            .field("radius", &self.radius())
            .field("conductor", &self.conductor)
            .field("cap", &self.cap)
            .finish()
    }
}

/// Enumerates the group generated by the images of a representation.
pub fn closure_enumerate(rep: &GenRep, cap: usize) -> Result<ClosureGroup> {
    let gens = rep
        .images()
        .iter()
        .map(|m| match m {
            Matrix::Exact(e) => Ok(e.clone()),
            Matrix::Float(_) => Err(Error::NotExact),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut g = closure_of_matrices(&gens, cap)?;
    g.source_constant = Some(rep.is_constant());
    Ok(g)
}

/// Enumerates the group generated by exact invertible matrices.
pub fn closure_of_matrices(gens: &[CycMatrix], cap: usize) -> Result<ClosureGroup> {
    let d = gens.first().ok_or_else(|| Error::ShapeMismatch("no generators".into()))?.rows();
    for g in gens {
        if g.rows() != d || g.cols() != d {
            return Err(Error::ShapeMismatch("generators of different sizes".into()));
        }
    }
    let conductor = gens.iter().fold(1u32, |acc, g| acc.lcm(&g.conductor()));
    let ctx = PackedCtx::new(d, conductor);
    let packed: Option<Vec<PackedMat>> = gens.iter().map(|g| PackedMat::from_cyc(g, &ctx)).collect();
    let mut inner = None;
    if let (Some(packed), Some(id)) = (packed, PackedMat::from_cyc(&CycMatrix::identity(d), &ctx)) {
        if let Some(e) = enumerate(ctx, id, packed, cap)? {
            inner = Some(Inner::Packed(e));
        }
    }
    let inner = match inner {
        Some(i) => i,
        None => {
            let e = enumerate(conductor, CycMatrix::identity(d), gens.to_vec(), cap)?
                .expect("arbitrary precision never overflows");
            Inner::Big(e)
        }
    };
    Ok(ClosureGroup { generators: gens.to_vec(), conductor, cap, source_constant: None, inner })
}

macro_rules! dispatch {
    ($self:expr, $e:ident => $body:expr) => {
        match &$self.inner {
            Inner::Packed($e) => $body,
            Inner::Big($e) => $body,
        }
    };
}

impl ClosureGroup {
    pub fn order(&self) -> usize {
        dispatch!(self, e => e.store.len())
    }

    /// Word length (in positive generators) at which the last new element appeared.
    pub fn radius(&self) -> usize {
        dispatch!(self, e => e.radius)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn degree(&self) -> usize {
        self.generators[0].rows()
    }

    pub fn generators(&self) -> &[CycMatrix] {
        &self.generators
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn source_constant(&self) -> Option<bool> {
        self.source_constant
    }

    /// Whether enumeration stayed in machine-integer arithmetic.
    pub fn used_packed_arithmetic(&self) -> bool {
        matches!(self.inner, Inner::Packed(_))
    }

    /// All elements, sorted by their exact coefficient keys.
    pub fn elements(&self) -> Vec<CycMatrix> {
        let mut all = dispatch!(self, e => e.elements());
        let m = self.conductor;
        all.sort_by_cached_key(|x| x.key_at(m));
        all
    }

    /// Sorted exact keys of all elements.
    pub fn element_keys(&self) -> Vec<Vec<BigInt>> {
        let m = self.conductor;
        let mut keys: Vec<Vec<BigInt>> = dispatch!(self, e => e.elements()).iter().map(|x| x.key_at(m)).collect();
        keys.sort();
        keys
    }

    pub fn contains(&self, a: &CycMatrix) -> bool {
        match &self.inner {
            Inner::Packed(e) => PackedMat::from_cyc(a, &e.store.ctx).is_some_and(|p| e.store.find(&p).is_some()),
            Inner::Big(e) => e.store.find(a).is_some(),
        }
    }

    /// Orders of the derived series `G ⊇ G' ⊇ G'' ⊇ ⋯` until it stabilizes.
    pub fn derived_orders(&self) -> Result<Vec<usize>> {
        dispatch!(self, e => e.derived_orders())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageLabel {
    Constant,
    SolvableNonconstant,
    Nonsolvable,
}

impl fmt::Display for ImageLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ImageLabel::Constant => "constant",
            ImageLabel::SolvableNonconstant => "solvable-nonconstant",
            ImageLabel::Nonsolvable => "nonsolvable",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub order: usize,
    pub series: Vec<usize>,
    pub solvable: bool,
    pub constant: bool,
    pub label: ImageLabel,
    pub candidates: Vec<Candidate>,
}

impl StructureReport {
    /// `key=value` lines.
    pub fn to_kv(&self) -> String {
        let series: Vec<String> = self.series.iter().map(|s| s.to_string()).collect();
        let cands: Vec<String> = self.candidates.iter().map(|c| c.to_string()).collect();
        format!(
            "order={}\nseries={}\nsolvable={}\nconstant={}\nlabel={}\ncandidates={}\n",
            self.order,
            series.join(","),
            self.solvable,
            self.constant,
            self.label,
            cands.join(";")
        )
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let series: Vec<String> = self.series.iter().map(|s| s.to_string()).collect();
        writeln!(f, "order       {}", self.order)?;
        writeln!(f, "series      {}", series.join(" > "))?;
        writeln!(f, "solvable    {}", self.solvable)?;
        writeln!(f, "constant    {}", self.constant)?;
        writeln!(f, "label       {}", self.label)?;
        for c in &self.candidates {
            writeln!(f, "candidate   {}", c)?;
        }
        Ok(())
    }
}

/// Derived series, solvability, and order-based classification hints.
pub fn derived_series(g: &ClosureGroup) -> Result<StructureReport> {
    let series = g.derived_orders()?;
    let solvable = *series.last().unwrap() == 1;
    let constant = g.source_constant.unwrap_or(false);
    let label = if constant {
        ImageLabel::Constant
    } else if solvable {
        ImageLabel::SolvableNonconstant
    } else {
        ImageLabel::Nonsolvable
    };
    let mut report = StructureReport { order: g.order(), series, solvable, constant, label, candidates: Vec::new() };
    report.candidates = classify_candidates(&report);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditOutcome {
    pub passed: bool,
    pub note: Option<String>,
}

/// Checks that a representation with at least six strands does not have a
/// solvable, nonconstant image. Smaller braid groups pass with a note.
pub fn solvable_constancy_audit(rep: &GenRep, report: &StructureReport) -> AuditOutcome {
    if rep.strands() < 6 {
        return AuditOutcome { passed: true, note: Some(format!("out of hypothesis: n = {} < 6", rep.strands())) };
    }
    let violation = report.solvable && !rep.is_constant();
    AuditOutcome { passed: !violation, note: violation.then(|| "solvable nonconstant image".to_string()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNumber;
    use crate::rep::{burau_reduced, constant_rep, jones_tl_rep};

    #[test]
    fn cyclic_constant_image() {
        let rep = constant_rep(6, Matrix::Exact(CycMatrix::scalar(1, &CycNumber::root_of_unity(6, 1)))).unwrap();
        let g = closure_enumerate(&rep, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        let r = derived_series(&g).unwrap();
        assert_eq!(r.series, vec![6, 1]);
        assert!(r.solvable);
        assert_eq!(r.label, ImageLabel::Constant);
    }

    #[test]
    fn burau_at_one_is_symmetric() {
        let rep = burau_reduced(3, &CycNumber::one()).unwrap();
        let g = closure_enumerate(&rep, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        let r = derived_series(&g).unwrap();
        assert_eq!(r.series, vec![6, 3, 1]);
        assert_eq!(r.label, ImageLabel::SolvableNonconstant);
    }

    #[test]
    fn cap_is_enforced() {
        let rep = burau_reduced(4, &CycNumber::from_integer(-1)).unwrap();
        assert_eq!(closure_enumerate(&rep, 5000).unwrap_err(), Error::CapExceeded(5000));
    }

    #[test]
    fn float_reps_are_rejected() {
        let rep = burau_reduced(3, &CycNumber::one()).unwrap().to_float();
        assert_eq!(closure_enumerate(&rep, 10).unwrap_err(), Error::NotExact);
    }

    #[test]
    fn small_jones_image() {
        let rep = jones_tl_rep(4, &CycNumber::root_of_unity(4, 1), (2, 2)).unwrap();
        let g = closure_enumerate(&rep, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 96);
        assert!(g.used_packed_arithmetic());
        let r = derived_series(&g).unwrap();
        assert!(r.solvable);
        for w in r.series.windows(2) {
            assert_eq!(w[0] % w[1], 0);
        }
        assert!(solvable_constancy_audit(&rep, &r).note.is_some());
    }

    #[test]
    fn big_fallback_agrees() {
        let rep = jones_tl_rep(3, &CycNumber::root_of_unity(10, 1), (2, 1)).unwrap();
        let gens: Vec<CycMatrix> = rep
            .images()
            .iter()
            .map(|m| match m {
                Matrix::Exact(e) => e.clone(),
                _ => unreachable!(),
            })
            .collect();
        let packed = closure_of_matrices(&gens, DEFAULT_CAP).unwrap();
        let big = enumerate(10u32, CycMatrix::identity(2), gens.clone(), DEFAULT_CAP).unwrap().unwrap();
        assert_eq!(packed.order(), big.store.len());
        assert_eq!(packed.order(), 600);
    }
}

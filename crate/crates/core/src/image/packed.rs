//! Group elements for closure enumeration.
//!
//! `PackedMat` stores a matrix over `Q(ζ_m)` as one common denominator and a
//! flat array of machine-integer power-basis coefficients. Multiplication
//! reports overflow instead of wrapping, so callers can fall back to
//! arbitrary precision.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{table, CycNumber, FieldTable};
use crate::matrix::CycMatrix;

pub(crate) trait GroupElem: Clone + PartialEq {
    type Ctx;
    fn mul(&self, other: &Self, ctx: &Self::Ctx) -> Option<Self>;
    fn hash64(&self, ctx: &Self::Ctx) -> u64;
    fn to_cyc(&self, ctx: &Self::Ctx) -> CycMatrix;
}

pub(crate) struct PackedCtx {
    pub d: usize,
    pub m: u32,
    phi: usize,
    field: Arc<FieldTable>,
}

impl PackedCtx {
    pub fn new(d: usize, m: u32) -> Self {
        let field = table(m);
        PackedCtx { d, m, phi: field.phi, field }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct PackedMat {
    den: i64,
    num: Box<[i64]>,
}

impl PackedMat {
    pub fn from_cyc(a: &CycMatrix, ctx: &PackedCtx) -> Option<Self> {
        let parts: Vec<(BigInt, Vec<BigInt>)> = a.entries().iter().map(|x| x.integer_parts_at(ctx.m)).collect();
        let den = parts.iter().fold(BigInt::from(1), |acc, (d, _)| acc.lcm(d));
        let mut num = Vec::with_capacity(ctx.d * ctx.d * ctx.phi);
        for (d, coeffs) in &parts {
            let factor = &den / d;
            for c in coeffs {
                num.push((c * &factor).to_i64()?);
            }
        }
        Some(PackedMat { den: den.to_i64()?, num: num.into_boxed_slice() })
    }

    fn normalize(den: i128, mut acc: Vec<i128>) -> Option<Self> {
        let mut g = den;
        for &c in &acc {
            if g == 1 {
                break;
            }
            g = g.gcd(&c);
        }
        let g = if den < 0 { -g } else { g };
        let den = den / g;
        let mut num = Vec::with_capacity(acc.len());
        for c in acc.iter_mut() {
            num.push(i64::try_from(*c / g).ok()?);
        }
        Some(PackedMat { den: i64::try_from(den).ok()?, num: num.into_boxed_slice() })
    }
}

impl GroupElem for PackedMat {
    type Ctx = PackedCtx;

    fn mul(&self, other: &Self, ctx: &PackedCtx) -> Option<Self> {
        let (d, phi) = (ctx.d, ctx.phi);
        let width = 2 * phi - 1;
        let mut raw = vec![0i128; width];
        let mut acc = vec![0i128; d * d * phi];
        for r in 0..d {
            for c in 0..d {
                raw.iter_mut().for_each(|x| *x = 0);
                let mut any = false;
                for k in 0..d {
                    let a = &self.num[(r * d + k) * phi..(r * d + k + 1) * phi];
                    if a.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let b = &other.num[(k * d + c) * phi..(k * d + c + 1) * phi];
                    for (i, &ai) in a.iter().enumerate() {
                        if ai == 0 {
                            continue;
                        }
                        for (j, &bj) in b.iter().enumerate() {
                            if bj != 0 {
                                raw[i + j] = raw[i + j].checked_add((ai as i128).checked_mul(bj as i128)?)?;
                                any = true;
                            }
                        }
                    }
                }
                if !any {
                    continue;
                }
                let out = &mut acc[(r * d + c) * phi..(r * d + c + 1) * phi];
                out.copy_from_slice(&raw[..phi]);
                for (e, &v) in raw.iter().enumerate().skip(phi) {
                    if v == 0 {
                        continue;
                    }
                    let power = &ctx.field.powers[e % ctx.m as usize];
                    for (o, &p) in out.iter_mut().zip(power) {
                        *o = o.checked_add(v.checked_mul(p as i128)?)?;
                    }
                }
            }
        }
        let den = (self.den as i128).checked_mul(other.den as i128)?;
        PackedMat::normalize(den, acc)
    }

    fn hash64(&self, _ctx: &PackedCtx) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    fn to_cyc(&self, ctx: &PackedCtx) -> CycMatrix {
        let phi = ctx.phi;
        let den = BigInt::from(self.den);
        CycMatrix::from_fn(ctx.d, ctx.d, |r, c| {
            let coeffs: Vec<BigRational> = self.num[(r * ctx.d + c) * phi..(r * ctx.d + c + 1) * phi]
                .iter()
                .map(|&x| BigRational::new(BigInt::from(x), den.clone()))
                .collect();
            if coeffs.iter().all(|x| x.is_zero()) {
                CycNumber::zero()
            } else {
                CycNumber::from_exponent_coeffs(ctx.m, &coeffs)
            }
        })
    }
}

/// Arbitrary-precision fallback.
impl GroupElem for CycMatrix {
    type Ctx = u32;

    fn mul(&self, other: &Self, _ctx: &u32) -> Option<Self> {
        CycMatrix::mul(self, other).ok()
    }

    fn hash64(&self, ctx: &u32) -> u64 {
        let mut h = DefaultHasher::new();
        self.key_at(*ctx).hash(&mut h);
        h.finish()
    }

    fn to_cyc(&self, _ctx: &u32) -> CycMatrix {
        self.clone()
    }
}

/// Elements with hash buckets of indices.
pub(crate) struct Store<E: GroupElem> {
    pub ctx: E::Ctx,
    pub elems: Vec<E>,
    buckets: HashMap<u64, Vec<u32>>,
}

impl<E: GroupElem> Store<E> {
    pub fn new(ctx: E::Ctx) -> Self {
        Store { ctx, elems: Vec::new(), buckets: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn find(&self, e: &E) -> Option<usize> {
        let h = e.hash64(&self.ctx);
        self.buckets.get(&h)?.iter().map(|&i| i as usize).find(|&i| self.elems[i] == *e)
    }

    /// Inserts `e` unless present; returns its index and whether it was new.
    pub fn insert(&mut self, e: E) -> (usize, bool) {
        let h = e.hash64(&self.ctx);
        if let Some(bucket) = self.buckets.get(&h) {
            if let Some(&i) = bucket.iter().find(|&&i| self.elems[i as usize] == e) {
                return (i as usize, false);
            }
        }
        let idx = self.elems.len();
        self.elems.push(e);
        self.buckets.entry(h).or_default().push(idx as u32);
        (idx, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_product_matches_exact() {
        let z = CycNumber::root_of_unity;
        let a = CycMatrix::from_fn(3, 3, |r, c| &z(12, (r * 5 + c) as i64) + &CycNumber::from_integer(c as i64 - 1));
        let b = CycMatrix::from_fn(3, 3, |r, c| {
            if r == c {
                z(4, 1)
            } else {
                CycNumber::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2 + r as i64)))
            }
        });
        let ctx = PackedCtx::new(3, 12);
        let pa = PackedMat::from_cyc(&a, &ctx).unwrap();
        let pb = PackedMat::from_cyc(&b, &ctx).unwrap();
        let prod = pa.mul(&pb, &ctx).unwrap();
        assert_eq!(prod.to_cyc(&ctx), a.mul(&b).unwrap());
        assert_eq!(pa.to_cyc(&ctx), a);
    }

    #[test]
    fn overflow_is_reported() {
        let big = CycMatrix::scalar(1, &CycNumber::from_integer(1 << 20));
        let ctx = PackedCtx::new(1, 1);
        let p = PackedMat::from_cyc(&big, &ctx).unwrap();
        let sq = p.mul(&p, &ctx).unwrap();
        assert!(sq.mul(&sq, &ctx).is_none());
    }
}

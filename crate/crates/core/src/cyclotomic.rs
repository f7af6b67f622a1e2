//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element is stored against the power basis `1, ζ, …, ζ^{φ(m)-1}` with
//! a single positive common denominator. Reduction modulo the cyclotomic
//! polynomial happens eagerly after every operation, so two elements of the
//! same conductor are equal exactly when their stored data are equal.
//! Elements that happen to be rational are always stored with conductor 1.
//!
//! Mixed-conductor operations promote both operands to the least common
//! conductor. Equality promotes as well, so `ζ_8^2 == ζ_4`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduction data for one conductor: `powers[k]` is `ζ_m^k` written in the
/// power basis, for `0 <= k < m`.
#[derive(Debug)]
pub(crate) struct FieldTable {
    pub(crate) phi: usize,
    pub(crate) powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both monic-leading integer polynomials, coefficients low → high
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd] / den[dd];
        quot[k] = c;
        for (t, &d) in den.iter().enumerate() {
            rem[k + t] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_poly(m: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let pd = cyclotomic_poly(d, memo);
            num = poly_div_exact(&num, &pd);
        }
    }
    memo.insert(m, num.clone());
    num
}

fn build_table(m: u32) -> FieldTable {
    let mut memo = HashMap::new();
    let poly = cyclotomic_poly(m, &mut memo);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by ζ: shift up, then fold the top coefficient using the monic polynomial
        let top = cur[phi - 1];
        for k in (1..phi).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for k in 0..phi {
                cur[k] -= top * poly[k];
            }
        }
    }
    FieldTable { phi, powers }
}

pub(crate) fn table(m: u32) -> Arc<FieldTable> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Arc<FieldTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = tables.read().expect("field table lock").get(&m) {
        return t.clone();
    }
    let t = Arc::new(build_table(m));
    tables.write().expect("field table lock").entry(m).or_insert(t).clone()
}

/// Euler's totient.
pub fn totient(m: u32) -> usize {
    table(m).phi
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone, Debug)]
pub struct CycNumber {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNumber {
    /// Builds `Σ coeffs[j] ζ_m^j` for arbitrary exponents `j`, reducing into canonical form.
    pub fn from_exponent_coeffs(m: u32, coeffs: &[BigRational]) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut by_exp = vec![BigInt::zero(); m as usize];
        for (j, c) in coeffs.iter().enumerate() {
            by_exp[j % m as usize] += c.numer() * (&den / c.denom());
        }
        Self::from_exponent_ints(m, by_exp, den)
    }

    fn from_exponent_ints(m: u32, by_exp: Vec<BigInt>, den: BigInt) -> Self {
        let t = table(m);
        let mut num = vec![BigInt::zero(); t.phi];
        for (k, c) in by_exp.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < t.phi {
                num[k] += c;
            } else {
                for (b, &p) in t.powers[k].iter().enumerate() {
                    if p != 0 {
                        num[b] += &c * p;
                    }
                }
            }
        }
        let mut out = CycNumber { conductor: m, num, den };
        out.normalize();
        out
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut out = CycNumber {
            conductor: 1,
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        };
        out.normalize();
        out
    }

    pub fn from_integer(n: i64) -> Self {
        CycNumber { conductor: 1, num: vec![BigInt::from(n)], den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `ζ_m^k = exp(2πik/m)`, stored in the smallest field `Q(ζ_{m/gcd(m,k)})`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let k = k.rem_euclid(m as i64) as u32;
        let g = m.gcd(&k);
        let m2 = m / g;
        let k2 = (k / g) as usize;
        let mut by_exp = vec![BigInt::zero(); m2 as usize];
        by_exp[k2 % m2 as usize] = BigInt::one();
        Self::from_exponent_ints(m2, by_exp, BigInt::one())
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
        }
        if self.conductor != 1 && self.num.iter().skip(1).all(|c| c.is_zero()) {
            self.conductor = 1;
            self.num.truncate(1);
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients against the power basis of the stored conductor.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Common denominator and numerators after promotion to conductor `m`.
    pub fn integer_parts_at(&self, m: u32) -> (BigInt, Vec<BigInt>) {
        let p = self.promote(m);
        (p.den, p.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.num[0].is_one() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Rewrites the element in `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn promote(&self, m: u32) -> CycNumber {
        if m == self.conductor {
            return self.clone();
        }
        assert!(
            m % self.conductor == 0,
            "cannot promote conductor {} to {}",
            self.conductor,
            m
        );
        let step = (m / self.conductor) as usize;
        let mut by_exp = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            by_exp[(j * step) % m as usize] += c;
        }
        let mut out = Self::from_exponent_ints(m, by_exp, self.den.clone());
        // from_exponent_ints demotes rationals; keep the requested conductor for callers
        // that need aligned coefficient vectors.
        if out.conductor != m {
            let phi = table(m).phi;
            let mut num = vec![BigInt::zero(); phi];
            num[0] = out.num[0].clone();
            out = CycNumber { conductor: m, num, den: out.den };
        }
        out
    }

    fn aligned(a: &CycNumber, b: &CycNumber) -> (CycNumber, CycNumber, u32) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone(), a.conductor);
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.promote(m), b.promote(m), m)
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> CycNumber {
        let m = self.conductor;
        let k = k.rem_euclid(m as i64) as usize;
        let mut by_exp = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            by_exp[(j * k) % m as usize] += c;
        }
        Self::from_exponent_ints(m, by_exp, self.den.clone())
    }

    /// Complex conjugation, i.e. the automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycNumber {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<CycNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(CycNumber::from_rational(r.recip()));
        }
        let m = self.conductor;
        // a^{-1} = (Π_{σ≠1} σ(a)) / N(a)
        let mut others = CycNumber::one();
        for k in 2..m as i64 {
            if (k as u32).gcd(&m) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .expect("field norm is rational");
        Ok(&others * &CycNumber::from_rational(norm.recip()))
    }

    pub fn checked_div(&self, other: &CycNumber) -> Result<CycNumber> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNumber> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNumber::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Multiplicative order if this is a root of unity.
    pub fn root_order(&self) -> Option<u32> {
        if self.is_zero() || (self.embed().norm() - 1.0).abs() > 1e-9 {
            return None;
        }
        let c = self.conductor;
        let bound = if c % 2 == 0 { c } else { 2 * c };
        let mut acc = CycNumber::one();
        for k in 1..=bound {
            acc = &acc * self;
            if acc.is_one() {
                return Some(k);
            }
        }
        None
    }

    /// Complex embedding sending `ζ_m ↦ exp(2πi/m)`.
    pub fn embed(&self) -> Complex64 {
        let m = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = BigRational::new(c.clone(), self.den.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * j as f64 / m;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        Complex64::new(re, im)
    }

    /// `Tr(a)/[Q(ζ_m):Q]`, which does not depend on the field `a` is viewed in.
    fn normalized_trace(&self) -> BigRational {
        let m = self.conductor;
        let mut acc = BigRational::zero();
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = if j == 0 { m } else { m.gcd(&(j as u32)) };
            let mj = m / g;
            let mu = mobius(mj);
            if mu != 0 {
                acc += BigRational::new(c * mu, BigInt::from(totient(mj)));
            }
        }
        acc / BigRational::from_integer(self.den.clone())
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b, _) = CycNumber::aligned(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNumber {}

impl Hash for CycNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized_trace().hash(state);
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (a, b, m) = CycNumber::aligned(self, rhs);
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| x * &b.den + y * &a.den)
                .collect()
        };
        let den = if a.den == b.den { a.den } else { &a.den * &b.den };
        let mut out = CycNumber { conductor: m, num, den };
        out.normalize();
        out
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() || rhs.is_zero() {
            return CycNumber::zero();
        }
        if self.conductor == 1 || rhs.conductor == 1 {
            let (r, x) = if self.conductor == 1 { (self, rhs) } else { (rhs, self) };
            let mut out = CycNumber {
                conductor: x.conductor,
                num: x.num.iter().map(|c| c * &r.num[0]).collect(),
                den: &x.den * &r.den,
            };
            out.normalize();
            return out;
        }
        let (a, b, m) = CycNumber::aligned(self, rhs);
        let mut by_exp = vec![BigInt::zero(); m as usize];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                by_exp[(i + j) % m as usize] += x * y;
            }
        }
        CycNumber::from_exponent_ints(m, by_exp, &a.den * &b.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        CycNumber::from_integer(n)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    write!(f, "z{}", self.conductor)?;
                    if j > 1 {
                        write!(f, "^{}", j)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Accepts `zeta m k` (the root of unity `ζ_m^k`) or a rational literal such as `-3/4`.
impl FromStr for CycNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::ParseError { line: 1, msg };
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks.as_slice() {
            ["zeta", m, k] => {
                let m: u32 = m.parse().map_err(|_| bad(format!("bad conductor '{}'", m)))?;
                let k: i64 = k.parse().map_err(|_| bad(format!("bad exponent '{}'", k)))?;
                if m == 0 {
                    return Err(bad("conductor must be positive".into()));
                }
                Ok(CycNumber::root_of_unity(m, k))
            }
            [lit] => {
                let r = if let Some((p, q)) = lit.split_once('/') {
                    let p: BigInt = p.parse().map_err(|_| bad(format!("bad rational '{}'", lit)))?;
                    let q: BigInt = q.parse().map_err(|_| bad(format!("bad rational '{}'", lit)))?;
                    if q.is_zero() {
                        return Err(bad("zero denominator".into()));
                    }
                    BigRational::new(p, q)
                } else {
                    let p: BigInt = lit.parse().map_err(|_| bad(format!("bad rational '{}'", lit)))?;
                    BigRational::from_integer(p)
                };
                Ok(CycNumber::from_rational(r))
            }
            _ => Err(bad(format!("expected 'zeta m k' or a rational, got '{}'", s))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(m, k)
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(z(4, 2), CycNumber::from_integer(-1));
        assert_eq!(z(1, 0), CycNumber::one());
        let e = z(6, 1).embed();
        assert!((e - Complex64::new(0.5, 0.8660254037844386)).norm() < 1e-12);
        for m in 1..30u32 {
            for k in -3..(m as i64 + 3) {
                let a = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                assert!((z(m, k).embed() - Complex64::new(a.cos(), a.sin())).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&z(5, 1) * &z(5, 4), CycNumber::one());
        let x = &CycNumber::one() + &z(8, 1);
        assert_eq!(x.checked_div(&x).unwrap(), CycNumber::one());
        assert_eq!(&z(3, 1) + &z(3, 2), CycNumber::from_integer(-1));
        assert_eq!(CycNumber::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_conductors_promote() {
        assert_eq!(z(8, 2), z(4, 1));
        let s = &z(4, 1) + &z(3, 1);
        assert_eq!(s.conductor(), 12);
        assert!((s.embed() - (z(4, 1).embed() + z(3, 1).embed())).norm() < 1e-12);
    }

    #[test]
    fn conjugation_is_an_involution() {
        let a = &(&z(12, 1) + &z(12, 5)) + &CycNumber::from_rational(BigRational::new(3.into(), 7.into()));
        assert_eq!(a.conj().conj(), a);
        assert!((a.conj().embed() - a.embed().conj()).norm() < 1e-12);
    }

    #[test]
    fn inverse_in_degree_eight_field() {
        let a = &(&z(15, 1) + &z(15, 7)) + &CycNumber::from_integer(2);
        let b = a.inv().unwrap();
        assert_eq!(&a * &b, CycNumber::one());
    }

    #[test]
    fn parse_and_display() {
        let q: CycNumber = "zeta 4 1".parse().unwrap();
        assert_eq!(q, z(4, 1));
        let r: CycNumber = "-3/6".parse().unwrap();
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!(q.to_string(), "z4");
        assert!("zeta 0 1".parse::<CycNumber>().is_err());
        assert!("pi".parse::<CycNumber>().is_err());
    }

    #[test]
    fn hash_agrees_with_cross_conductor_equality() {
        use std::collections::hash_map::DefaultHasher;
        let h = |x: &CycNumber| {
            let mut s = DefaultHasher::new();
            x.hash(&mut s);
            s.finish()
        };
        assert_eq!(h(&z(8, 2)), h(&z(4, 1)));
        assert_eq!(h(&z(12, 4)), h(&z(3, 1)));
    }
}

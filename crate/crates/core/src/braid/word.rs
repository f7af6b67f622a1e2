use std::fmt;

use crate::error::{Error, Result};

/// A word in the Artin generators of `B_n`. Letter `i > 0` is `x_i`, letter
/// `-i` is `x_i^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::IndexOutOfRange(format!("braid group needs at least 2 strands, got {}", strands)));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::IndexOutOfRange(format!("letter {} in B_{}", l, strands)));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn generator(strands: usize, i: usize) -> Result<Self> {
        Self::new(strands, vec![i as i32])
    }

    /// Parses whitespace-separated signed integers, e.g. `"1 2 -1"`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|t| {
                t.parse::<i32>().map_err(|_| Error::ParseError { line: 1, msg: format!("bad braid letter '{}'", t) })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    pub fn pow(&self, e: i32) -> BraidWord {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// `self · g · self^{-1}`.
    pub fn conjugate(&self, g: &BraidWord) -> Result<BraidWord> {
        self.compose(g)?.compose(&self.invert())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        let a = BraidWord::parse(3, "1").unwrap();
        let b = BraidWord::parse(3, "-1").unwrap();
        assert!(a.compose(&b).unwrap().free_reduce().is_empty());
    }

    #[test]
    fn inversion_reverses() {
        let w = BraidWord::parse(3, "1 2").unwrap();
        assert_eq!(w.invert().letters(), &[-2, -1]);
    }

    #[test]
    fn free_reduce_is_maximal() {
        let w = BraidWord::parse(3, "1 2 -2 1").unwrap();
        assert_eq!(w.free_reduce().letters(), &[1, 1]);
        let w = BraidWord::parse(4, "1 2 3 -3 -2 -1").unwrap();
        assert!(w.free_reduce().is_empty());
    }

    #[test]
    fn range_checks() {
        assert!(matches!(BraidWord::parse(3, "3"), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(BraidWord::parse(3, "0"), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(BraidWord::parse(3, "x"), Err(Error::ParseError { .. })));
        let a = BraidWord::parse(3, "1").unwrap();
        let b = BraidWord::parse(4, "1").unwrap();
        assert_eq!(a.compose(&b), Err(Error::StrandMismatch(3, 4)));
    }
}

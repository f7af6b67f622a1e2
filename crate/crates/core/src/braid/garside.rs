//! Garside left normal form for the Artin braid group.
//!
//! A braid is written `Δ^p · A_1 ⋯ A_r` with each `A_k` a permutation braid
//! (a positive braid in which every pair of strands crosses at most once),
//! none equal to `Δ` or the identity, and every adjacent pair left-weighted:
//! the starting set of `A_{k+1}` is contained in the finishing set of `A_k`.
//! This factorization is unique, so it decides equality in `B_n`.

use std::fmt;

use super::word::BraidWord;
use crate::error::{Error, Result};

/// A permutation braid. `images[k]` is the final position of the strand that
/// starts at position `k` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermBraid {
    images: Vec<usize>,
}

impl PermBraid {
    pub fn identity(n: usize) -> Self {
        PermBraid { images: (0..n).collect() }
    }

    pub fn delta(n: usize) -> Self {
        PermBraid { images: (0..n).rev().collect() }
    }

    /// The generator `x_{i+1}` (0-based crossing position `i`).
    fn crossing(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i, i + 1);
        p
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    fn n(&self) -> usize {
        self.images.len()
    }

    fn inverse_images(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n()];
        for (k, &p) in self.images.iter().enumerate() {
            inv[p] = k;
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &p)| k == p)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.n();
        self.images.iter().enumerate().all(|(k, &p)| p == n - 1 - k)
    }

    /// Crossing positions `i` with `self = x_{i+1} · (positive)`.
    fn starts_with(&self, i: usize) -> bool {
        self.images[i] > self.images[i + 1]
    }

    /// Crossing positions `i` with `self = (positive) · x_{i+1}`.
    fn ends_with(&self, inv: &[usize], i: usize) -> bool {
        inv[i] > inv[i + 1]
    }

    /// `self · x_{i+1}`; caller guarantees the result is still simple.
    fn append_crossing(&mut self, i: usize) {
        for p in self.images.iter_mut() {
            if *p == i {
                *p = i + 1;
            } else if *p == i + 1 {
                *p = i;
            }
        }
    }

    /// `x_{i+1}^{-1} · self`; caller guarantees `i` is in the starting set.
    fn strip_leading_crossing(&mut self, i: usize) {
        self.images.swap(i, i + 1);
    }

    /// Conjugation by the half twist, `Δ A Δ^{-1}`.
    fn flip(&self) -> Self {
        let n = self.n();
        let mut images = vec![0; n];
        for k in 0..n {
            images[k] = n - 1 - self.images[n - 1 - k];
        }
        PermBraid { images }
    }

    /// The simple element `C` with `C · x_{i+1} = Δ`.
    fn left_complement_of_crossing(n: usize, i: usize) -> Self {
        let s = |k: usize| if k == i { i + 1 } else if k == i + 1 { i } else { k };
        PermBraid { images: (0..n).map(|k| s(n - 1 - k)).collect() }
    }

    /// A positive word (1-based letters) representing this permutation braid.
    pub fn to_letters(&self) -> Vec<i32> {
        let mut p = self.clone();
        let mut out = Vec::new();
        'outer: loop {
            for i in 0..p.n() - 1 {
                if p.starts_with(i) {
                    out.push(i as i32 + 1);
                    p.strip_leading_crossing(i);
                    continue 'outer;
                }
            }
            break;
        }
        out
    }
}

/// Makes `(a, b)` left-weighted by sliding crossings from the front of `b`
/// to the back of `a`. Returns whether anything moved.
fn left_weight(a: &mut PermBraid, b: &mut PermBraid) -> bool {
    let n = a.n();
    let mut moved = false;
    loop {
        let inv = a.inverse_images();
        let slide = (0..n - 1).find(|&i| b.starts_with(i) && !a.ends_with(&inv, i));
        match slide {
            Some(i) => {
                a.append_crossing(i);
                b.strip_leading_crossing(i);
                moved = true;
            }
            None => return moved,
        }
    }
}

/// Left normal form `Δ^infimum · factors`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    strands: usize,
    infimum: i64,
    factors: Vec<PermBraid>,
}

impl NormalForm {
    pub fn identity(strands: usize) -> Self {
        NormalForm { strands, infimum: 0, factors: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn infimum(&self) -> i64 {
        self.infimum
    }

    pub fn factors(&self) -> &[PermBraid] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    /// Canonical length `r` (number of non-Δ simple factors).
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    fn push_simple(&mut self, s: PermBraid) {
        self.factors.push(s);
        loop {
            let mut changed = false;
            for k in (1..self.factors.len()).rev() {
                let (left, right) = self.factors.split_at_mut(k);
                if left_weight(&mut left[k - 1], &mut right[0]) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let leading = self.factors.iter().take_while(|f| f.is_delta()).count();
        if leading > 0 {
            self.factors.drain(..leading);
            self.infimum += leading as i64;
        }
        while self.factors.last().is_some_and(|f| f.is_identity()) {
            self.factors.pop();
        }
    }

    fn push_letter(&mut self, letter: i32) {
        let n = self.strands;
        let i = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.push_simple(PermBraid::crossing(n, i));
        } else {
            self.infimum -= 1;
            for f in self.factors.iter_mut() {
                *f = f.flip();
            }
            self.push_simple(PermBraid::left_complement_of_crossing(n, i));
        }
    }

    /// A word representing this braid: `Δ^p` followed by the factors.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let delta_letters = PermBraid::delta(n).to_letters();
        let delta = BraidWord::new(n, delta_letters).expect("valid letters");
        let mut letters: Vec<i32> = delta.pow(self.infimum as i32).letters().to_vec();
        for f in &self.factors {
            letters.extend(f.to_letters());
        }
        BraidWord::new(n, letters).expect("valid letters")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "infimum {}", self.infimum)?;
        writeln!(f, "factors {}", self.factors.len())?;
        for p in &self.factors {
            let w: Vec<String> = p.to_letters().iter().map(|l| l.to_string()).collect();
            let im: Vec<String> = p.images().iter().map(|x| (x + 1).to_string()).collect();
            writeln!(f, "[{}] perm({})", w.join(" "), im.join(" "))?;
        }
        Ok(())
    }
}

pub fn normal_form(w: &BraidWord) -> NormalForm {
    let mut nf = NormalForm::identity(w.strands());
    for &l in w.letters() {
        nf.push_letter(l);
    }
    nf
}

/// Exact equality in `B_n`.
pub fn words_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    if a.strands() != b.strands() {
        return Err(Error::StrandMismatch(a.strands(), b.strands()));
    }
    Ok(normal_form(a) == normal_form(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let nf = normal_form(&w(4, ""));
        assert_eq!(nf.infimum(), 0);
        assert!(nf.factors().is_empty());
    }

    #[test]
    fn braid_relation_in_b3() {
        assert!(words_equal(&w(3, "1 2 1"), &w(3, "2 1 2")).unwrap());
        assert!(!words_equal(&w(3, "1 2"), &w(3, "2 1")).unwrap());
    }

    #[test]
    fn full_twist_in_b3() {
        let nf = normal_form(&w(3, "1 2 1 2 1 2"));
        assert_eq!(nf.infimum(), 2);
        assert!(nf.factors().is_empty());
        assert!(words_equal(&w(3, "1 2 1 2 1 2"), &w(3, "1 2 1 1 2 1")).unwrap());
    }

    #[test]
    fn far_generators_commute() {
        assert!(words_equal(&w(5, "1 3"), &w(5, "3 1")).unwrap());
        assert!(words_equal(&w(5, "1 -4 2"), &w(5, "-4 1 2")).unwrap());
        assert!(!words_equal(&w(5, "1 2"), &w(5, "1 3")).unwrap());
    }

    #[test]
    fn inverse_letters() {
        let nf = normal_form(&w(3, "-1"));
        assert_eq!(nf.infimum(), -1);
        assert_eq!(nf.factors().len(), 1);
        assert!(normal_form(&w(4, "1 -2 3 -3 2 -1")).is_identity());
        assert!(words_equal(&w(3, "-1 -2 -1"), &w(3, "-2 -1 -2")).unwrap());
    }

    #[test]
    fn normal_form_word_round_trip() {
        for s in ["1 2 -1 3 3 -2", "-1 -1 -2 3 1", "2 3 2 1 -3", ""] {
            let a = w(4, s);
            let nf = normal_form(&a);
            assert_eq!(normal_form(&nf.to_word()), nf);
        }
    }

    #[test]
    fn strand_mismatch() {
        assert_eq!(words_equal(&w(3, "1"), &w(4, "1")), Err(Error::StrandMismatch(3, 4)));
    }
}

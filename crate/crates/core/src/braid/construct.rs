//! Explicit conjugating words: ascending runs, the shift identity, the
//! swap word, and transport of commuting generator pairs.

use super::garside::words_equal;
use super::word::BraidWord;
use crate::error::{Error, Result};

fn check_index(i: usize, n: usize, what: &str) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange(format!("{} = {} not in [1, {}]", what, i, n - 1)));
    }
    Ok(())
}

fn check_strands(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("braid group needs at least 2 strands, got {}", n)));
    }
    Ok(())
}

/// `X_[i,j] = x_i x_{i+1} ⋯ x_j`, the identity when `j < i`.
pub fn ascending_run(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    check_strands(n)?;
    check_index(i, n, "i")?;
    if j >= n {
        return Err(Error::IndexOutOfRange(format!("j = {} exceeds {}", j, n - 1)));
    }
    let letters = if j < i { Vec::new() } else { (i as i32..=j as i32).collect() };
    BraidWord::new(n, letters)
}

/// The half twist `Δ` of `B_n` as a positive word.
pub fn half_twist(n: usize) -> Result<BraidWord> {
    check_strands(n)?;
    let mut letters = Vec::new();
    for top in (1..n).rev() {
        letters.extend(1..=top as i32);
    }
    BraidWord::new(n, letters)
}

/// Decides `X_[1,k] x_i X_[1,k]^{-1} = x_{i+1}` in `B_n` via normal forms.
pub fn shift_check(k: usize, i: usize, n: usize) -> Result<bool> {
    if k < 3 || k > n.saturating_sub(1) {
        return Err(Error::IndexOutOfRange(format!("need 3 <= k <= n-1, got k = {}, n = {}", k, n)));
    }
    if i < 1 || i > k - 2 {
        return Err(Error::IndexOutOfRange(format!("need 1 <= i <= k-2, got i = {}, k = {}", i, k)));
    }
    let run = ascending_run(1, k, n)?;
    let lhs = run.conjugate(&BraidWord::generator(n, i)?)?;
    words_equal(&lhs, &BraidWord::generator(n, i + 1)?)
}

/// `y = x_a x_{a+1} x_{a+2} x_a x_{a+1} x_a`, which exchanges `x_a` and `x_{a+2}` under conjugation.
pub fn swap_word(a: usize, n: usize) -> Result<BraidWord> {
    check_strands(n)?;
    if a < 1 || a + 2 > n - 1 {
        return Err(Error::IndexOutOfRange(format!("swap word needs 1 <= a and a+2 <= n-1, got a = {}, n = {}", a, n)));
    }
    let a = a as i32;
    BraidWord::new(n, vec![a, a + 1, a + 2, a, a + 1, a])
}

/// A word `C` with `C x_i C^{-1} = x_1` and `C x_j C^{-1} = x_3`.
fn to_reference_pair(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    if i > j {
        let sorted = to_reference_pair(j, i, n)?;
        return swap_word(1, n)?.invert().compose(&sorted);
    }
    // shift the pair down until x_i lands on x_1 (δ^{-1} x_m δ = x_{m-1})
    let delta = ascending_run(1, n - 1, n)?;
    let lower = delta.pow(-((i - 1) as i32));
    // then pull the second generator down to x_3 while x_1 stays fixed
    let gap = j - i + 1;
    let pull = if gap > 3 { ascending_run(3, n - 1, n)?.pow(-((gap - 3) as i32)) } else { BraidWord::identity(n)? };
    pull.compose(&lower)
}

/// A word `z` with `z x_i z^{-1} = x_k` and `z x_j z^{-1} = x_l`.
///
/// Any valid `z` is acceptable; the returned word is free-reduced and both
/// conjugation identities are certified by normal form before returning.
pub fn pair_transport(i: usize, j: usize, k: usize, l: usize, n: usize) -> Result<BraidWord> {
    check_strands(n)?;
    for (v, name) in [(i, "i"), (j, "j"), (k, "k"), (l, "l")] {
        check_index(v, n, name)?;
    }
    if i.abs_diff(j) < 2 {
        return Err(Error::InvalidPair(format!("|i - j| < 2 for ({}, {})", i, j)));
    }
    if k.abs_diff(l) < 2 {
        return Err(Error::InvalidPair(format!("|k - l| < 2 for ({}, {})", k, l)));
    }
    if (i, j) == (k, l) {
        return BraidWord::identity(n);
    }
    let from = to_reference_pair(i, j, n)?;
    let to = to_reference_pair(k, l, n)?;
    let z = to.invert().compose(&from)?.free_reduce();
    let ok_first = words_equal(&z.conjugate(&BraidWord::generator(n, i)?)?, &BraidWord::generator(n, k)?)?;
    let ok_second = words_equal(&z.conjugate(&BraidWord::generator(n, j)?)?, &BraidWord::generator(n, l)?)?;
    if !(ok_first && ok_second) {
        return Err(Error::Inconsistent(format!("transport word for ({},{})->({},{}) failed certification", i, j, k, l)));
    }
    Ok(z)
}

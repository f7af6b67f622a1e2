//! Smallest strand counts at which the constancy theorems apply, computed
//! with exact integer arithmetic.

use num_bigint::BigUint;
use num_integer::Roots;

/// Smallest integer `n` with `n ≥ 6·sqrt(dim) + 3`, i.e. `(n - 3)² ≥ 36·dim`.
pub fn rootbound_threshold(dim: u64) -> u64 {
    let target = 36u128 * dim as u128;
    let mut s = target.sqrt();
    if s * s < target {
        s += 1;
    }
    3 + s as u64
}

/// Smallest integer `n ≥ 0` with `n ≥ 3·log₂(k·|H|)`, i.e. `2^n ≥ (k·|H|)³`.
pub fn sporadic_threshold(k: u64, order_h: u64) -> u64 {
    let x = BigUint::from(k) * BigUint::from(order_h);
    let cube = x.pow(3);
    if cube <= BigUint::from(1u32) {
        return 0;
    }
    (cube - 1u32).bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rootbound_examples() {
        assert_eq!(rootbound_threshold(3), 14);
        assert_eq!(rootbound_threshold(248), 98);
        assert_eq!(rootbound_threshold(1), 9);
        assert_eq!(rootbound_threshold(4), 15);
        assert_eq!(rootbound_threshold(0), 3);
    }

    #[test]
    fn sporadic_examples() {
        assert_eq!(sporadic_threshold(1, 60), 18);
        assert_eq!(sporadic_threshold(2, 60), 21);
        assert_eq!(sporadic_threshold(1, 2), 3);
        assert_eq!(sporadic_threshold(1, 1), 0);
        assert_eq!(sporadic_threshold(1, 4), 6);
    }
}

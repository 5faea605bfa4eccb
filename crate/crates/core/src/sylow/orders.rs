//! Legendre's formula and the Sylow 2-subgroup orders it gives.

use num_bigint::BigUint;
use num_traits::One;

/// Exponent of 2 in `n!`: `Σ_{i≥1} ⌊n / 2^i⌋`.
pub fn nu2_factorial(n: u64) -> u64 {
    let mut total = 0;
    let mut q = n / 2;
    while q > 0 {
        total += q;
        q /= 2;
    }
    total
}

/// Exponent of 2 in `n` (`n ≥ 1`).
pub fn nu2(n: u64) -> u32 {
    n.trailing_zeros()
}

/// `|Syl₂(S_n)| = 2^{ν₂(n!)}`.
pub fn syl2_order_sn(n: u64) -> BigUint {
    BigUint::one() << nu2_factorial(n)
}

/// `|Syl₂(A_n)| = 2^{ν₂(n!) - 1}`, and 1 for `n < 3`.
pub fn syl2_order_an(n: u64) -> BigUint {
    if n < 3 {
        return BigUint::one();
    }
    BigUint::one() << (nu2_factorial(n) - 1)
}

/// `2^e` as a big integer.
pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_nu2_factorial(n: u64) -> u64 {
        (1..=n).map(|i| i.trailing_zeros() as u64).sum()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(nu2_factorial(8), 7);
        assert_eq!(nu2_factorial(1), 0);
        assert_eq!(nu2_factorial(0), 0);
        for k in 0..=20 {
            assert_eq!(nu2_factorial(1 << k), (1 << k) - 1);
        }
        for n in 0..2000 {
            assert_eq!(nu2_factorial(n), brute_nu2_factorial(n));
        }
    }

    #[test]
    fn stated_orders() {
        assert_eq!(syl2_order_an(8), pow2(6));
        assert_eq!(syl2_order_an(16), pow2(14));
        assert_eq!(syl2_order_an(12), pow2(9));
        assert_eq!(syl2_order_an(7), pow2(3));
        assert_eq!(syl2_order_sn(22), pow2(19));
        assert_eq!(syl2_order_sn(24), pow2(22));
    }

    #[test]
    fn small_alternating_groups_are_trivial() {
        for n in 0..3 {
            assert_eq!(syl2_order_an(n), BigUint::one());
        }
        assert_eq!(syl2_order_an(3), BigUint::one());
        assert_eq!(syl2_order_an(4), pow2(2));
        assert_eq!(syl2_order_sn(1), BigUint::one());
    }
}

//! Small-integer number theory: primality, modular powers, element orders and
//! prime search in arithmetic progressions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Default upper bound for prime searches.
pub const DEFAULT_PRIME_CAP: u64 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit integers.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p`, for `a` not divisible by `p`.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Prime factors of `n` in increasing order, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo the prime `p`; `None` when `p` divides `a`.
pub fn mult_order(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let mut order = p - 1;
    for q in prime_factors(p - 1) {
        while order.is_multiple_of(q) && mod_pow(a, order / q, p) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Smallest prime `r <= cap` with `r ≡ 1 (mod modulus)` that is not in `used` and exceeds `after`.
pub fn next_prime_one_mod(
    modulus: u64,
    used: &BTreeSet<u64>,
    after: u64,
    cap: u64,
) -> Result<u64> {
    let modulus = modulus.max(1);
    // First candidate of the form k*modulus + 1 above `after`.
    let mut r = if modulus == 1 {
        after + 1
    } else {
        (after / modulus + 1) * modulus + 1
    };
    while r <= cap {
        if is_prime(r) && !used.contains(&r) {
            return Ok(r);
        }
        r += modulus;
    }
    Err(Error::PrimeSearchCap { modulus, cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_prime(n), "{n}");
        }
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(6, 7), Some(2));
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(mult_order(3, 7), Some(6));
        assert_eq!(mult_order(14, 7), None);
        for p in [3u64, 5, 7, 11, 13, 43] {
            for a in 1..p {
                let naive = (1..).find(|&k| mod_pow(a, k, p) == 1).unwrap();
                assert_eq!(mult_order(a, p), Some(naive));
            }
        }
    }

    #[test]
    fn progression_search() {
        let none = BTreeSet::new();
        assert_eq!(next_prime_one_mod(6, &none, 0, 100), Ok(7));
        let used: BTreeSet<u64> = [7].into();
        assert_eq!(next_prime_one_mod(6, &used, 0, 100), Ok(13));
        assert_eq!(next_prime_one_mod(21, &none, 0, 100), Ok(43));
        assert_eq!(next_prime_one_mod(1, &none, 0, 100), Ok(2));
        assert_eq!(next_prime_one_mod(1, &[2, 3].into(), 0, 100), Ok(5));
        assert_eq!(next_prime_one_mod(6, &none, 7, 100), Ok(13));
        assert_eq!(
            next_prime_one_mod(1000, &none, 0, 1000),
            Err(Error::PrimeSearchCap { modulus: 1000, cap: 1000 })
        );
        assert_eq!(prime_factors(60), vec![2, 3, 5]);
    }
}

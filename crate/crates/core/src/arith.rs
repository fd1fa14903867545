//! Small integer helpers: primality, trial-division factorization, p-adic valuation.

use crate::error::{AlgebraError, Result};

/// Default trial-division bound used by [`factorize`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Factors `n` by trial division with divisors up to `bound`.
///
/// A leftover cofactor is accepted only when it is provably prime, i.e. smaller
/// than `bound²`; otherwise the input is rejected.
pub fn factorize(n: u128, bound: u64) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    if n <= 1 {
        return Ok(out);
    }
    let mut rest = n;
    let mut d: u128 = 2;
    while d * d <= rest && d <= bound as u128 {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        // trial division stopped at the bound before reaching sqrt(rest)
        if d * d <= rest || rest > u64::MAX as u128 {
            return Err(AlgebraError::FactorBoundExceeded { value: n, bound });
        }
        out.push((rest as u64, 1));
    }
    Ok(out)
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u128, bound: u64) -> Result<Vec<u64>> {
    Ok(factorize(n, bound)?.into_iter().map(|(p, _)| p).collect())
}

/// Exponent of `p` in `n` (`n` nonzero).
pub fn valuation(mut n: u128, p: u64) -> u32 {
    debug_assert!(n != 0);
    let p = p as u128;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Removes every factor of `p` from `n`.
pub fn strip_prime(mut n: u128, p: u64) -> u128 {
    if n == 0 {
        return 0;
    }
    let p = p as u128;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n
}

/// Smallest prime not contained in `excluded`.
pub fn smallest_prime_outside(excluded: &[u64]) -> u64 {
    (2u64..).find(|&p| is_prime(p) && !excluded.contains(&p))
        .expect("infinitely many primes")
}

/// Extended Euclid on signed integers: returns (g, x, y) with ax + by = g ≥ 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(91));
        assert_eq!(factorize(12, 100).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(30, 100).unwrap(), vec![(2, 1), (3, 1), (5, 1)]);
        assert_eq!(factorize(1, 100).unwrap(), vec![]);
        // 1009 is prime and below bound²
        assert_eq!(factorize(2 * 1009, 40).unwrap(), vec![(2, 1), (1009, 1)]);
    }

    #[test]
    fn factor_bound_is_loud() {
        let big = 1_000_003u128 * 1_000_033u128;
        assert!(matches!(
            factorize(big, 1000),
            Err(AlgebraError::FactorBoundExceeded { .. })
        ));
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(4, 6), (12, 18), (-8, 9), (0, 5), (7, 0)] {
            let (g, x, y) = ext_gcd(a, b);
            assert_eq!(a * x + b * y, g);
            assert!(g >= 0);
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(12, 2), 2);
        assert_eq!(valuation(12, 5), 0);
        assert_eq!(strip_prime(24, 2), 3);
        assert_eq!(smallest_prime_outside(&[2, 3]), 5);
    }
}

//! Deterministic primality for 64-bit integers.
//!
//! Strong-pseudoprime rounds over the fixed witness set {2, 3, ..., 37}.
//! Jaeschke and later Sorenson and Webster verified that no composite
//! below 3.3 * 10^24 passes all twelve witnesses, so for `u64` inputs
//! the answer is unconditionally correct, not probabilistic. Used where
//! polynomial values outrun the sieve.

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for any `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    // n is odd and greater than 37 here
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let primes_to_50 = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        for n in 0..=50 {
            assert_eq!(is_prime_u64(n), primes_to_50.contains(&n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_to_partial_witness_sets() {
        // composite, passes witnesses 2, 3, 5, 7
        assert!(!is_prime_u64(3_215_031_751));
        // composite, passes witnesses 2 through 23
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        // Carmichael number
        assert!(!is_prime_u64(561));
    }

    #[test]
    fn large_primes_and_composites() {
        assert!(is_prime_u64(2_147_483_647)); // 2^31 - 1
        assert!(is_prime_u64(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(u64::MAX)); // 3 * 5 * 17 * 257 * ...
        assert!(!is_prime_u64(2_305_843_009_213_693_953)); // 2^61 + 1 = 3 * 768614...
    }
}

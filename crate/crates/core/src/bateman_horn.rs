//! Bateman-Horn constants for families of integer polynomials.
//!
//! For g_1, ..., g_k the constant of Bateman and Horn (1962) is
//! E = prod_p (1 - a(p)/p) / (1 - 1/p)^k, where a(p) counts the
//! residues x mod p with g_1(x) * ... * g_k(x) = 0 (mod p). The
//! heuristic density of x with every g_i(x) prime is then
//! E / (H ln^k x) with H the product of the degrees.

use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, PolynomialFamily};
use crate::primality::{is_prime_u64, pow_mod};
use crate::product::{prime_product, singular_log_factor, LogFactor, TruncatedConstant};
use crate::sieve::PrimeTable;

/// Bound below which a(p) is counted by brute force over all residues.
/// Beyond it, all-linear families continue with exact per-polynomial
/// roots (a_1 x + a_0 has exactly one root mod p unless p divides a_1),
/// while families with a nonlinear member stop, and the recorded
/// truncation limit says so.
const ROOT_BRUTE_LIMIT: u64 = 100_000;

/// a(p): residues x in [0, p) where some g_i(x) vanishes mod p, counted
/// by brute force with all arithmetic reduced mod p. Runs in O(p), so
/// large prime moduli are legal but slow.
pub fn root_count(family: &PolynomialFamily, p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!(
            "root count modulus {p} is not prime"
        )));
    }
    Ok(root_count_brute(family, p))
}

fn reduce_coeffs(g: &IntPolynomial, p: u64) -> Vec<u64> {
    g.coefficients()
        .iter()
        .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
        .collect()
}

fn root_count_brute(family: &PolynomialFamily, p: u64) -> u64 {
    let reduced: Vec<Vec<u64>> = family.polys().iter().map(|g| reduce_coeffs(g, p)).collect();
    let mut count = 0;
    if p < (1 << 32) {
        // products of two residues fit u64
        for x in 0..p {
            if reduced.iter().any(|cs| horner_mod_u64(cs, x, p) == 0) {
                count += 1;
            }
        }
    } else {
        for x in 0..p {
            if reduced.iter().any(|cs| horner_mod_u128(cs, x, p) == 0) {
                count += 1;
            }
        }
    }
    count
}

fn horner_mod_u64(coeffs_ascending: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs_ascending.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

fn horner_mod_u128(coeffs_ascending: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u128;
    let (x, p) = (x as u128, p as u128);
    for &c in coeffs_ascending.iter().rev() {
        acc = (acc * x + c as u128) % p;
    }
    acc as u64
}

/// a(p) for an all-linear family by exact roots: each a x + b
/// contributes the single root -b/a mod p, or no root when p | a and
/// p does not divide b, or all of them when p divides both.
fn root_count_linear(family: &PolynomialFamily, p: u64) -> u64 {
    debug_assert!(family.all_linear());
    let mut roots: Vec<u64> = Vec::with_capacity(family.k());
    for g in family.polys() {
        let cs = reduce_coeffs(g, p);
        let (b, a) = (cs[0], cs[1]);
        if a == 0 {
            if b == 0 {
                return p;
            }
            continue;
        }
        // -b * a^(p-2) mod p
        let inv = pow_mod(a, p - 2, p);
        roots.push((((p - b) % p) as u128 * inv as u128 % p as u128) as u64);
    }
    roots.sort_unstable();
    roots.dedup();
    roots.len() as u64
}

fn alpha(family: &PolynomialFamily, p: u64) -> u64 {
    if p <= ROOT_BRUTE_LIMIT {
        root_count_brute(family, p)
    } else {
        root_count_linear(family, p)
    }
}

/// Truncated Bateman-Horn constant plus the degenerate marker.
#[derive(Clone, Debug)]
pub struct BatemanHornConstant {
    pub constant: TruncatedConstant,
    /// Smallest prime p with a(p) = p, meaning p divides every value of
    /// the family product. The constant is exactly 0 when present.
    pub fixed_divisor: Option<u64>,
}

/// E(P) = prod_{p <= P} (1 - a(p)/p) / (1 - 1/p)^k over the primes up
/// to `p_limit`, subject to the brute-force cap described on
/// `ROOT_BRUTE_LIMIT`: nonlinear families truncate at min(p_limit, 10^5)
/// and report the effective bound in `truncation_limit`.
pub fn bateman_horn_constant(
    family: &PolynomialFamily,
    table: &PrimeTable,
    p_limit: u64,
) -> Result<BatemanHornConstant> {
    if p_limit < 2 {
        return Err(Error::Domain(format!(
            "Bateman-Horn constant needs p_limit >= 2, got {p_limit}"
        )));
    }
    let effective = if family.all_linear() {
        p_limit
    } else {
        p_limit.min(ROOT_BRUTE_LIMIT)
    };
    let k = family.k() as i32;
    let (constant, fixed_divisor) = prime_product(table, effective, |p| {
        let a = alpha(family, p);
        if a == p {
            LogFactor::Zero
        } else {
            LogFactor::Term(singular_log_factor(a, k, p))
        }
    })?;
    Ok(BatemanHornConstant {
        constant,
        fixed_divisor,
    })
}

/// Heuristic density E / (H ln^k x) of arguments where the whole family
/// is prime.
pub fn predicted_density(family: &PolynomialFamily, constant: f64, x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!(
            "predicted density needs x > 1, got {x}"
        )));
    }
    if !constant.is_finite() || constant < 0.0 {
        return Err(Error::Domain(format!(
            "constant must be finite and >= 0, got {constant}"
        )));
    }
    let h = family.degree_product()? as f64;
    Ok(constant / (h * x.ln().powi(family.k() as i32)))
}

/// |{x in [1, x_limit] : every g_i(x) is prime}| with primality read
/// from the table. Values below 2 disqualify their x; values beyond the
/// table limit are a range error.
pub fn count_prime_values(
    family: &PolynomialFamily,
    table: &PrimeTable,
    x_limit: u64,
) -> Result<u64> {
    let limit = table.limit() as i128;
    count_values_where(family, x_limit, |v| {
        if v > limit {
            Err(Error::Range(format!(
                "polynomial value {v} exceeds the sieve limit {}",
                table.limit()
            )))
        } else {
            Ok(table.is_prime_unchecked(v as u64))
        }
    })
}

/// Shared counting loop: how many x in [1, x_limit] make every family
/// value pass `is_prime`. Values below 2 short-circuit to false without
/// consulting the predicate. Chunks run in parallel; results and errors
/// are resolved in ascending x order, so the outcome is deterministic.
pub(crate) fn count_values_where<F>(
    family: &PolynomialFamily,
    x_limit: u64,
    is_prime: F,
) -> Result<u64>
where
    F: Fn(i128) -> Result<bool> + Sync,
{
    use rayon::prelude::*;

    const CHUNK: u64 = 1 << 13;
    let bounds: Vec<(u64, u64)> = (0..x_limit / CHUNK + 1)
        .map(|i| (i * CHUNK + 1, (i + 1).saturating_mul(CHUNK).min(x_limit)))
        .filter(|(lo, hi)| lo <= hi)
        .collect();
    let partials: Vec<Result<u64>> = bounds
        .par_iter()
        .map(|&(lo, hi)| {
            let mut c = 0u64;
            for x in lo..=hi {
                let mut all = true;
                for g in family.polys() {
                    let v = crate::poly::poly_eval(g, x)?;
                    if v < 2 || !is_prime(v)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    c += 1;
                }
            }
            Ok(c)
        })
        .collect();
    let mut total = 0u64;
    for r in partials {
        total += r?;
    }
    Ok(total)
}

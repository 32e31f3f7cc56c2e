//! Mertens-type prime products and the density ratio they control.
//!
//! `mertens_product` evaluates prod_{p<=y} (1 - 1/p) in log space.
//! Mertens' third theorem says the product behaves like e^{-gamma}/ln y,
//! so the ratio of the naive prime density 1/ln x to the product over
//! p <= sqrt(x) tends to e^{gamma}/2 = 0.8905... This module exposes
//! the product, the density, their ratio, and a direct numerical check
//! of the theorem.

use crate::constants::EULER_GAMMA;
use crate::error::{Error, Result};
use crate::kahan::NeumaierSum;
use crate::sieve::PrimeTable;

/// prod_{p <= y} (1 - 1/p), as exp of a compensated sum of log1p(-1/p).
/// The empty product (y < 2) is 1. Strictly decreasing across primes.
pub fn mertens_product(table: &PrimeTable, y: u64) -> Result<f64> {
    let mut sum = NeumaierSum::new();
    for p in table.primes_up_to(y)? {
        sum.add((-1.0 / p as f64).ln_1p());
    }
    Ok(sum.value().exp())
}

/// First-order heuristic prime density 1/ln(x).
pub fn heuristic_density(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("density needs x > 1, got {x}")));
    }
    Ok(1.0 / x.ln())
}

/// Ratio of the heuristic density at x to the Mertens product over
/// p <= sqrt(x). Tends to e^gamma/2 as x grows; the sieve only needs
/// to reach sqrt(x).
pub fn dependency_ratio(table: &PrimeTable, x: u64) -> Result<f64> {
    if x < 4 {
        return Err(Error::Domain(format!(
            "dependency ratio needs x >= 4, got {x}"
        )));
    }
    let root = x.isqrt();
    if root > table.limit() {
        return Err(Error::Range(format!(
            "sqrt({x}) = {root} exceeds the sieve limit {}",
            table.limit()
        )));
    }
    Ok(heuristic_density(x as f64)? / mertens_product(table, root)?)
}

/// mertens_product(y) * e^gamma * ln(y), which tends to 1. The
/// Rosser-Schoenfeld error envelope |check - 1| < 1/(2 ln^2 y) holds
/// unconditionally for y >= 285, hence the domain cut.
pub fn mertens_theorem_check(table: &PrimeTable, y: u64) -> Result<f64> {
    if y < 285 {
        return Err(Error::Domain(format!(
            "theorem check needs y >= 285, got {y}"
        )));
    }
    Ok(mertens_product(table, y)? * EULER_GAMMA.exp() * (y as f64).ln())
}

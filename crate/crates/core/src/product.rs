//! Truncated Euler-product machinery shared by the constant modules.

use rayon::prelude::*;

use crate::error::Result;
use crate::kahan::NeumaierSum;
use crate::sieve::PrimeTable;

/// Value of a prime product truncated at `truncation_limit`, together
/// with its convergence diagnostic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedConstant {
    /// Product over the primes up to `truncation_limit`.
    pub value: f64,
    /// Prime bound the product was actually truncated at.
    pub truncation_limit: u64,
    /// Relative change from halving the truncation bound,
    /// |value(P) - value(P/2)| / value(P). Exactly 0 for collapsed
    /// (zero-valued) products.
    pub last_doubling_delta: f64,
}

/// One per-prime factor of a truncated product, in log space. `Zero`
/// collapses the whole product to exactly 0.
#[derive(Clone, Copy, Debug)]
pub(crate) enum LogFactor {
    Term(f64),
    Zero,
}

/// log of the factor (1 - w/p) / (1 - 1/p)^k. Every singular-series
/// style product in the crate funnels through this one expression, so
/// equal (w, k, p) inputs contribute bit-identical terms no matter
/// which module asked.
pub(crate) fn singular_log_factor(w: u64, k: i32, p: u64) -> f64 {
    let p = p as f64;
    (-(w as f64) / p).ln_1p() - k as f64 * (-1.0 / p).ln_1p()
}

/// Multiplies `factor(p)` over the primes p <= p_limit, accumulating in
/// log space with compensated summation. The running value at half the
/// truncation bound is captured in the same pass, so the doubling
/// diagnostic costs nothing extra.
///
/// Factors are computed in parallel but folded in ascending prime
/// order, so the result is bit-identical for every thread count.
/// Returns the constant and the smallest prime whose factor was `Zero`,
/// if any.
pub(crate) fn prime_product<F>(
    table: &PrimeTable,
    p_limit: u64,
    factor: F,
) -> Result<(TruncatedConstant, Option<u64>)>
where
    F: Fn(u64) -> LogFactor + Sync,
{
    // A degenerate factor almost always sits at a tiny prime; catching
    // it up front skips the parallel sweep entirely.
    for p in table.primes_up_to(p_limit.min(64))? {
        if matches!(factor(p), LogFactor::Zero) {
            return Ok((
                TruncatedConstant {
                    value: 0.0,
                    truncation_limit: p_limit,
                    last_doubling_delta: 0.0,
                },
                Some(p),
            ));
        }
    }

    let primes: Vec<u64> = table.primes_up_to(p_limit)?.collect();
    let factors: Vec<LogFactor> = primes.par_iter().map(|&p| factor(p)).collect();

    let half = p_limit / 2;
    let mut sum = NeumaierSum::new();
    let mut half_log = 0.0;
    let mut half_done = false;
    let mut zero_at = None;
    for (&p, &f) in primes.iter().zip(&factors) {
        if !half_done && p > half {
            half_log = sum.value();
            half_done = true;
        }
        match f {
            LogFactor::Term(t) => sum.add(t),
            LogFactor::Zero => {
                zero_at = Some(p);
                break;
            }
        }
    }
    if !half_done {
        half_log = sum.value();
    }

    let (value, half_value) = match zero_at {
        Some(p) => (0.0, if p <= half { 0.0 } else { half_log.exp() }),
        None => (sum.value().exp(), half_log.exp()),
    };
    let delta = if value == 0.0 {
        0.0
    } else {
        ((value - half_value) / value).abs()
    };
    Ok((
        TruncatedConstant {
            value,
            truncation_limit: p_limit,
            last_doubling_delta: delta,
        },
        zero_at,
    ))
}

//! Side-by-side tables of empirical counts against predicted counts.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bateman_horn::{bateman_horn_constant, count_values_where};
use crate::constants::half_e_gamma;
use crate::constellations::{count_constellations, singular_series, OffsetTuple};
use crate::error::{Error, Result};
use crate::mertens::dependency_ratio;
use crate::poly::PolynomialFamily;
use crate::primality::is_prime_u64;
use crate::quadrature::log_power_integral;
use crate::sieve::PrimeTable;

/// Relative tolerance the predicted-count quadrature is driven to.
pub const INTEGRAL_REL_TOL: f64 = 1e-9;

/// constant * integral_2^x dt/ln^k(t), the predicted count of
/// constellations (or prime family arguments) up to x. Exactly linear
/// in `constant`, so a zero constant predicts exactly zero.
pub fn predicted_count_integral(constant: f64, k: u32, x: f64) -> Result<f64> {
    if !constant.is_finite() || constant < 0.0 {
        return Err(Error::Domain(format!(
            "constant must be finite and >= 0, got {constant}"
        )));
    }
    if k == 0 {
        return Err(Error::Domain(
            "integral exponent k must be at least 1".into(),
        ));
    }
    if !(x >= 2.0) {
        return Err(Error::Domain(format!(
            "integral endpoint must be >= 2, got {x}"
        )));
    }
    Ok(constant * log_power_integral(k, x, INTEGRAL_REL_TOL))
}

/// One row of an empirical-versus-predicted comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityComparison {
    pub x: u64,
    pub empirical: u64,
    pub predicted: f64,
    /// empirical / predicted; absent when the prediction is zero
    /// (inadmissible tuples and fixed-divisor families).
    pub ratio: Option<f64>,
    /// Multiplier in front of the integral: the singular series for a
    /// tuple, E/H for a polynomial family.
    pub constant: f64,
    /// Prime bound the constant was truncated at.
    pub truncation: u64,
}

/// What a comparison run counts.
#[derive(Clone, Debug)]
pub enum ComparisonTarget {
    Tuple(OffsetTuple),
    Family(PolynomialFamily),
}

/// Family counting that reads the table where the value fits and falls
/// back to the deterministic 64-bit primality test beyond it. Values
/// beyond u64 are an overflow error.
pub fn count_prime_values_extended(
    family: &PolynomialFamily,
    table: &PrimeTable,
    x_limit: u64,
) -> Result<u64> {
    let limit = table.limit() as i128;
    count_values_where(family, x_limit, |v| {
        if v <= limit {
            Ok(table.is_prime_unchecked(v as u64))
        } else if v <= u64::MAX as i128 {
            Ok(is_prime_u64(v as u64))
        } else {
            Err(Error::Overflow(format!(
                "polynomial value {v} exceeds the 64-bit primality ceiling"
            )))
        }
    })
}

/// Builds comparison rows from an already-computed constant.
/// `constant_used` multiplies the integral directly (for families pass
/// E/H), `k` is the integral exponent, `truncation` is echoed into the
/// rows. Checkpoints are sorted and deduplicated.
pub fn comparison_rows(
    target: &ComparisonTarget,
    table: &PrimeTable,
    checkpoints: &[u64],
    constant_used: f64,
    k: u32,
    truncation: u64,
) -> Result<Vec<DensityComparison>> {
    let mut cps = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    let mut rows = Vec::with_capacity(cps.len());
    for &x in &cps {
        let empirical = match target {
            ComparisonTarget::Tuple(t) => count_constellations(table, t, x)?,
            ComparisonTarget::Family(f) => count_prime_values_extended(f, table, x)?,
        };
        let predicted = if x < 2 {
            0.0
        } else {
            predicted_count_integral(constant_used, k, x as f64)?
        };
        let ratio = if predicted > 0.0 {
            Some(empirical as f64 / predicted)
        } else {
            None
        };
        rows.push(DensityComparison {
            x,
            empirical,
            predicted,
            ratio,
            constant: constant_used,
            truncation,
        });
    }
    Ok(rows)
}

/// Computes the target's constant truncated at `p_limit`, counts at
/// each checkpoint, and returns one row per checkpoint in ascending x.
/// Degenerate targets (inadmissible tuple, fixed divisor) produce rows
/// with a zero constant and no ratio rather than being dropped.
pub fn run_comparison(
    target: &ComparisonTarget,
    table: &PrimeTable,
    checkpoints: &[u64],
    p_limit: u64,
) -> Result<Vec<DensityComparison>> {
    let (constant_used, k, truncation) = match target {
        ComparisonTarget::Tuple(t) => {
            let s = singular_series(t, table, p_limit)?;
            (s.constant.value, t.k() as u32, s.constant.truncation_limit)
        }
        ComparisonTarget::Family(f) => {
            let bh = bateman_horn_constant(f, table, p_limit)?;
            (
                bh.constant.value / f.degree_product()? as f64,
                f.k() as u32,
                bh.constant.truncation_limit,
            )
        }
    };
    comparison_rows(target, table, checkpoints, constant_used, k, truncation)
}

/// One row of the dependency ratio trend table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrendRow {
    pub x: u64,
    pub dependency_ratio: f64,
    pub abs_error: f64,
}

/// `dependency_ratio` at each checkpoint together with its distance
/// from the limit e^gamma/2. Checkpoints are sorted and deduplicated;
/// an empty list gives an empty table.
pub fn dependency_trend_report(table: &PrimeTable, checkpoints: &[u64]) -> Result<Vec<TrendRow>> {
    let mut cps = checkpoints.to_vec();
    cps.sort_unstable();
    cps.dedup();
    let mut rows = Vec::with_capacity(cps.len());
    for &x in &cps {
        let r = dependency_ratio(table, x)?;
        rows.push(TrendRow {
            x,
            dependency_ratio: r,
            abs_error: (r - half_e_gamma()).abs(),
        });
    }
    Ok(rows)
}

/// CSV for comparison rows. The header is fixed; floats print in
/// shortest round-trip form and a missing ratio prints as an empty
/// field.
pub fn comparison_csv(rows: &[DensityComparison]) -> String {
    let mut out = String::from("x,empirical,predicted,ratio,constant,truncation\n");
    for r in rows {
        let ratio = r.ratio.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.x, r.empirical, r.predicted, ratio, r.constant, r.truncation
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// CSV for trend rows with the fixed header.
pub fn trend_csv(rows: &[TrendRow]) -> String {
    let mut out = String::from("x,dependency_ratio,abs_error\n");
    for r in rows {
        writeln!(out, "{},{},{}", r.x, r.dependency_ratio, r.abs_error)
            .expect("writing to a String cannot fail");
    }
    out
}

/// Pretty-printed JSON array; missing ratios serialize as null.
pub fn rows_json<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows)
        .map_err(|e| Error::Config(format!("JSON serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

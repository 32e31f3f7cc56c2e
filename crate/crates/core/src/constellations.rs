//! Admissible prime tuples and their Hardy-Littlewood singular series.
//!
//! An offset tuple (0, o_2, ..., o_k) is admissible when it misses at
//! least one residue class modulo every prime. Its singular series
//! D_k = prod_p (1 - w(p)/p) / (1 - 1/p)^k measures how far the
//! constellation deviates from k independent prime events; for (0, 2)
//! it is the twin prime constant 2 C_2 in the normalization of
//! Hardy and Littlewood (1923).

use std::fmt;

use crate::constants::half_e_gamma;
use crate::error::{Error, Result};
use crate::kahan::NeumaierSum;
use crate::primality::is_prime_u64;
use crate::product::{prime_product, singular_log_factor, LogFactor, TruncatedConstant};
use crate::sieve::PrimeTable;

/// Bound below which w(p) is counted by brute force over the residues;
/// above it the distinct-offsets shortcut answers. The two routes agree
/// everywhere (see the cross-validation tests), the split only trades
/// the defining computation for an O(k log k) one where brute force
/// would be slow.
const RESIDUE_BRUTE_LIMIT: u64 = 100_000;

/// Strictly increasing tuple of even offsets starting at 0, for
/// example (0, 2, 6, 8).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetTuple {
    offsets: Vec<u64>,
}

impl OffsetTuple {
    /// Validates and wraps the offsets: nonempty, first exactly 0,
    /// strictly increasing, all even.
    pub fn new(offsets: Vec<u64>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::Domain("offset tuple must be nonempty".into()));
        }
        if offsets[0] != 0 {
            return Err(Error::Domain(format!(
                "first offset must be 0, got {}",
                offsets[0]
            )));
        }
        for pair in offsets.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::Domain(format!(
                    "offsets must be strictly increasing, got {} before {}",
                    pair[0], pair[1]
                )));
            }
        }
        if let Some(odd) = offsets.iter().find(|o| *o % 2 != 0) {
            return Err(Error::Domain(format!("offsets must be even, got {odd}")));
        }
        Ok(Self { offsets })
    }

    /// Parses a comma-separated offset list like "0,2,6,8".
    pub fn parse(text: &str) -> Result<Self> {
        let offsets = text
            .split(',')
            .map(|tok| {
                tok.trim().parse::<u64>().map_err(|_| {
                    Error::Parse(format!("invalid offset {:?} in tuple {text:?}", tok.trim()))
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        Self::new(offsets)
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn k(&self) -> usize {
        self.offsets.len()
    }

    pub fn max_offset(&self) -> u64 {
        *self.offsets.last().expect("tuple is nonempty")
    }
}

impl fmt::Display for OffsetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.offsets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{o}")?;
        }
        Ok(())
    }
}

fn residue_count_brute(tuple: &OffsetTuple, p: u64) -> u64 {
    let mut w = 0;
    for x in 0..p {
        if tuple.offsets.iter().any(|&o| (x + o % p) % p == 0) {
            w += 1;
        }
    }
    w
}

fn residue_count_distinct(tuple: &OffsetTuple, p: u64) -> u64 {
    // x hits the tuple iff x = -o_i mod p for some i, and negation is a
    // bijection mod p, so counting distinct o_i mod p is enough
    let mut residues: Vec<u64> = tuple.offsets.iter().map(|&o| o % p).collect();
    residues.sort_unstable();
    residues.dedup();
    residues.len() as u64
}

fn w_value(tuple: &OffsetTuple, p: u64) -> u64 {
    if p <= RESIDUE_BRUTE_LIMIT {
        residue_count_brute(tuple, p)
    } else {
        residue_count_distinct(tuple, p)
    }
}

/// w(p): the number of residue classes x mod p with p dividing some
/// x + o_i. Counted by brute force over all residues for p up to 10^5,
/// by distinct offsets mod p beyond. Always 1 <= w(p) <= min(k, p).
pub fn residue_count(tuple: &OffsetTuple, p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!("residue modulus {p} is not prime")));
    }
    Ok(w_value(tuple, p))
}

/// A tuple is admissible when w(p) < p for every prime p. Only primes
/// p <= k can fail, since w(p) <= k always.
pub fn is_admissible(tuple: &OffsetTuple) -> bool {
    (2..=tuple.k() as u64)
        .filter(|&p| is_prime_u64(p))
        .all(|p| w_value(tuple, p) < p)
}

/// Truncated singular series of a tuple, with its admissibility flag.
#[derive(Clone, Debug)]
pub struct SingularSeries {
    pub tuple: OffsetTuple,
    pub constant: TruncatedConstant,
    pub admissible: bool,
}

/// D_k(P) = prod_{p <= P} (1 - w(p)/p) / (1 - 1/p)^k for the primes up
/// to `p_limit`. Inadmissible tuples report the value exactly 0 with a
/// zero doubling delta.
pub fn singular_series(
    tuple: &OffsetTuple,
    table: &PrimeTable,
    p_limit: u64,
) -> Result<SingularSeries> {
    if p_limit < 2 {
        return Err(Error::Domain(format!(
            "singular series needs p_limit >= 2, got {p_limit}"
        )));
    }
    let k = tuple.k() as i32;
    let (mut constant, _) = prime_product(table, p_limit, |p| {
        let w = w_value(tuple, p);
        if w == p {
            LogFactor::Zero
        } else {
            LogFactor::Term(singular_log_factor(w, k, p))
        }
    })?;
    let admissible = is_admissible(tuple);
    if !admissible {
        // the zero factor may lie beyond p_limit; the series of an
        // inadmissible tuple is 0 regardless of truncation
        constant = TruncatedConstant {
            value: 0.0,
            truncation_limit: constant.truncation_limit,
            last_doubling_delta: 0.0,
        };
    }
    Ok(SingularSeries {
        tuple: tuple.clone(),
        constant,
        admissible,
    })
}

/// Twin prime constant truncation 2 prod_{2 < p <= P} p(p-2)/(p-1)^2,
/// evaluated through the same per-prime factor form as the singular
/// series so the two routes agree bit for bit at equal truncation.
pub fn twin_constant_closed_form(table: &PrimeTable, p_limit: u64) -> Result<TruncatedConstant> {
    if p_limit < 2 {
        return Err(Error::Domain(format!(
            "twin constant needs p_limit >= 2, got {p_limit}"
        )));
    }
    let (constant, _) = prime_product(table, p_limit, |p| {
        let w = if p == 2 { 1 } else { 2 };
        LogFactor::Term(singular_log_factor(w, 2, p))
    })?;
    Ok(constant)
}

/// Exact conditional correction for one prime, as the rational pair
/// (numerator, denominator): (1, 1) for p = 2, else (p-2, p-1). This is
/// the factor by which conditioning on "x is prime" reweights the
/// chance that p misses x + 2.
pub fn conditional_factor(p: u64) -> Result<(u64, u64)> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!(
            "conditional factor modulus {p} is not prime"
        )));
    }
    Ok(if p == 2 { (1, 1) } else { (p - 2, p - 1) })
}

/// 0.5 e^gamma * prod_{2 < p <= sqrt(x)} (p-2)/(p-1): the heuristic
/// probability that x + 2 is prime given that x is.
pub fn conditional_probability_estimate(table: &PrimeTable, x: u64) -> Result<f64> {
    if x < 4 {
        return Err(Error::Domain(format!(
            "conditional probability estimate needs x >= 4, got {x}"
        )));
    }
    let root = x.isqrt();
    if root > table.limit() {
        return Err(Error::Range(format!(
            "sqrt({x}) = {root} exceeds the sieve limit {}",
            table.limit()
        )));
    }
    let mut sum = NeumaierSum::new();
    for p in table.primes_up_to(root)? {
        let (num, den) = conditional_factor(p)?;
        if num != den {
            sum.add((num as f64 / den as f64).ln());
        }
    }
    Ok(half_e_gamma() * sum.value().exp())
}

/// 2 prod_{2 < p <= sqrt(x)} p(p-2)/(p-1)^2: the twin closed form
/// truncated at sqrt(x). Delegates to `twin_constant_closed_form`, so
/// equal truncations give bit-identical values.
pub fn dependency_ratio_product(table: &PrimeTable, x: u64) -> Result<f64> {
    if x < 4 {
        return Err(Error::Domain(format!(
            "dependency ratio product needs x >= 4, got {x}"
        )));
    }
    Ok(twin_constant_closed_form(table, x.isqrt())?.value)
}

/// |{x <= x_limit : x + o is prime for every offset o}|, counted
/// directly against the sieve. Needs the table to reach
/// x_limit + max_offset.
pub fn count_constellations(table: &PrimeTable, tuple: &OffsetTuple, x_limit: u64) -> Result<u64> {
    let need = x_limit.checked_add(tuple.max_offset()).ok_or_else(|| {
        Error::Overflow(format!(
            "x_limit {x_limit} plus offset {} exceeds u64",
            tuple.max_offset()
        ))
    })?;
    if need > table.limit() {
        return Err(Error::Range(format!(
            "counting to {x_limit} needs primes up to {need}, beyond the sieve limit {}",
            table.limit()
        )));
    }
    let rest = &tuple.offsets[1..];
    Ok(table.count_primes_where(x_limit, |p| {
        rest.iter().all(|&o| table.is_prime_unchecked(p + o))
    }))
}

/// [pi_2(x)/pi(x)] / [pi(x)/x]: the measured chance that a prime at
/// scale x has a twin, relative to the unconditional prime density.
pub fn empirical_conditional_ratio(table: &PrimeTable, x: u64) -> Result<f64> {
    let twin = OffsetTuple::new(vec![0, 2]).expect("static tuple");
    let twins = count_constellations(table, &twin, x)?;
    let primes = table.prime_count(x)?;
    if primes == 0 {
        return Err(Error::Domain(format!("no primes up to {x}")));
    }
    Ok((twins as f64 / primes as f64) / (primes as f64 / x as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(offsets: &[u64]) -> OffsetTuple {
        OffsetTuple::new(offsets.to_vec()).unwrap()
    }

    #[test]
    fn brute_and_distinct_routes_agree_at_the_threshold() {
        // 99991 is the largest prime below the brute bound, 100003 the
        // first above; check a window of primes straddling it
        let t = PrimeTable::build(101_000).unwrap();
        let tuples = [
            tuple(&[0, 2]),
            tuple(&[0, 2, 6, 8]),
            tuple(&[0, 4, 6, 10, 12, 16]),
            tuple(&[0, 2, 4]),
            tuple(&[0, 199_960]),
        ];
        let primes: Vec<u64> = t
            .primes_up_to(101_000)
            .unwrap()
            .filter(|&p| p > 99_000)
            .collect();
        for tu in &tuples {
            for &p in &primes {
                assert_eq!(
                    residue_count_brute(tu, p),
                    residue_count_distinct(tu, p),
                    "tuple {tu}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn validation_rejects_malformed_tuples() {
        assert!(matches!(OffsetTuple::new(vec![]), Err(Error::Domain(_))));
        assert!(matches!(
            OffsetTuple::new(vec![2, 4]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            OffsetTuple::new(vec![0, 3]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            OffsetTuple::new(vec![0, 4, 4]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            OffsetTuple::new(vec![0, 6, 2]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(OffsetTuple::parse("0,x"), Err(Error::Parse(_))));
        assert!(matches!(OffsetTuple::parse(""), Err(Error::Parse(_))));
        assert_eq!(OffsetTuple::parse("0, 2, 6").unwrap(), tuple(&[0, 2, 6]));
    }

    #[test]
    fn residue_count_needs_a_prime_modulus() {
        assert!(matches!(
            residue_count(&tuple(&[0, 2]), 9),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            residue_count(&tuple(&[0, 2]), 0),
            Err(Error::Domain(_))
        ));
    }
}

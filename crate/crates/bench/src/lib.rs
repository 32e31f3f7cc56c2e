//! Shared fixtures for the engine benches.

use constel_core::{OffsetTuple, PrimeTable};

/// Prime quadruplet pattern, the densest admissible 4-tuple.
pub fn quad_tuple() -> OffsetTuple {
    OffsetTuple::new(vec![0, 2, 6, 8]).expect("quadruplet tuple is valid")
}

pub fn table_to(limit: u64) -> PrimeTable {
    PrimeTable::build(limit).expect("bench table")
}

/// A block of odd candidates near 10^18: far past any sieve, so every
/// test exercises the full witness loop, with primes and composites
/// mixed at their natural density.
pub fn primality_candidates() -> Vec<u64> {
    (0..512)
        .map(|i| 1_000_000_000_000_000_003 + 2 * i)
        .collect()
}

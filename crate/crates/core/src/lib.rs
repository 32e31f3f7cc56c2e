//! Heuristic constants and empirical densities for prime
//! constellations.
//!
//! The crate builds a segmented, parallel prime sieve and evaluates the
//! classical truncated Euler products on top of it: the Mertens product
//! and the dependency ratio it controls, Hardy-Littlewood singular
//! series for admissible offset tuples, and Bateman-Horn constants for
//! families of integer polynomials. A reporting layer counts the real
//! constellations in the sieve and compares them with the predicted
//! integral counts.
//!
//! Every computation is deterministic: parallel counting sums exact
//! integers, and products fold their per-prime factors in ascending
//! prime order regardless of the thread count, so equal inputs give
//! bit-identical output everywhere.
//!
//! ```
//! use constel_core::{constellations, OffsetTuple, PrimeTable};
//!
//! let table = PrimeTable::build(1_000).unwrap();
//! let twin = OffsetTuple::parse("0,2").unwrap();
//! let twins = constellations::count_constellations(&table, &twin, 100).unwrap();
//! assert_eq!(twins, 8);
//! ```

pub mod bateman_horn;
pub mod constants;
pub mod constellations;
mod error;
mod kahan;
pub mod mertens;
pub mod poly;
mod primality;
mod product;
mod quadrature;
pub mod report;
pub mod sieve;

pub use bateman_horn::BatemanHornConstant;
pub use constellations::{OffsetTuple, SingularSeries};
pub use error::{Error, Result};
pub use kahan::NeumaierSum;
pub use poly::{IntPolynomial, IrreducibilityScreen, PolynomialFamily};
pub use primality::is_prime_u64;
pub use product::TruncatedConstant;
pub use report::{ComparisonTarget, DensityComparison, TrendRow};
pub use sieve::PrimeTable;

/// Runs `f` on a dedicated rayon pool with `threads` workers. Output is
/// identical for every thread count; the knob only bounds parallelism.
pub fn with_thread_count<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    if threads == 0 {
        return Err(Error::Config("thread count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool construction failed: {e}")))?;
    Ok(pool.install(f))
}

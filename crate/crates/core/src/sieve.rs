//! Segmented sieve of Eratosthenes over a compact odd-only bitmap.
//!
//! The table stores one bit per odd number in [3, limit]; a set bit
//! means prime, and 2 is special-cased by every query. Construction
//! sieves fixed-size segments so the working set stays cache resident,
//! and segments cover disjoint word ranges, so they are marked in
//! parallel without any synchronization. Once built the table is
//! immutable and every query is read-only.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest supported sieve limit. The odd bitmap at this size occupies
/// 1 GiB; anything bigger wants a different storage strategy.
pub const MAX_SIEVE_LIMIT: u64 = 1 << 34;

/// Default segment size in odd flags (2^20 flags = 128 KiB of bitmap),
/// sized to sit inside a last-level cache slice.
pub const DEFAULT_SEGMENT_FLAGS: usize = 1 << 20;

/// Immutable table of the primes up to a fixed limit.
pub struct PrimeTable {
    limit: u64,
    words: Vec<u64>,
}

impl PrimeTable {
    /// Sieves all primes up to `limit` inclusive with the default
    /// segment size.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_segment_flags(limit, DEFAULT_SEGMENT_FLAGS)
    }

    /// Sieves with an explicit segment size given in odd flags. The
    /// size is rounded up to whole 64-bit words; the finished table is
    /// identical for every segment size.
    pub fn build_with_segment_flags(limit: u64, segment_flags: usize) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Config(format!(
                "sieve limit must be at least 2, got {limit}"
            )));
        }
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::Config(format!(
                "sieve limit {limit} exceeds the supported maximum {MAX_SIEVE_LIMIT}"
            )));
        }
        if segment_flags == 0 {
            return Err(Error::Config("segment size must be positive".into()));
        }
        let n_flags = if limit < 3 {
            0
        } else {
            ((limit - 3) / 2 + 1) as usize
        };
        let n_words = n_flags.div_ceil(64);
        let mut words = vec![u64::MAX; n_words];
        let seg_words = segment_flags.div_ceil(64);
        let base = base_primes(limit);

        words
            .par_chunks_mut(seg_words)
            .enumerate()
            .for_each(|(ci, chunk)| {
                let flag_lo = ci * seg_words * 64;
                let flag_hi = (flag_lo + chunk.len() * 64).min(n_flags);
                mark_segment(chunk, flag_lo, flag_hi, &base);
            });

        // Flags past the limit share the last word; clear them so the
        // popcounts never see them.
        if n_flags % 64 != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << (n_flags % 64)) - 1;
        }
        Ok(Self { limit, words })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn bit(&self, n: u64) -> bool {
        let idx = ((n - 3) / 2) as usize;
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Primality of `n`. Queries outside [2, limit] are a contract
    /// violation and error rather than answering `false`.
    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n < 2 || n > self.limit {
            return Err(Error::Range(format!(
                "primality query {n} outside the table range [2, {}]",
                self.limit
            )));
        }
        Ok(self.is_prime_unchecked(n))
    }

    pub(crate) fn is_prime_unchecked(&self, n: u64) -> bool {
        debug_assert!((2..=self.limit).contains(&n));
        if n % 2 == 0 {
            n == 2
        } else {
            self.bit(n)
        }
    }

    /// pi(x), the number of primes up to `x` inclusive.
    pub fn prime_count(&self, x: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::Range(format!(
                "prime count at {x} exceeds the sieve limit {}",
                self.limit
            )));
        }
        if x < 2 {
            return Ok(0);
        }
        if x < 3 {
            return Ok(1);
        }
        let last = ((if x % 2 == 0 { x - 1 } else { x }) - 3) / 2;
        let full = (last / 64) as usize;
        let mut count: u64 = self.words[..full]
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum();
        let mask = if last % 64 == 63 {
            u64::MAX
        } else {
            (1u64 << (last % 64 + 1)) - 1
        };
        count += (self.words[full] & mask).count_ones() as u64;
        Ok(count + 1) // the word scan never sees 2
    }

    /// Iterator over the primes up to `y` in increasing order.
    pub fn primes_up_to(&self, y: u64) -> Result<Primes<'_>> {
        if y > self.limit {
            return Err(Error::Range(format!(
                "prime iteration to {y} exceeds the sieve limit {}",
                self.limit
            )));
        }
        Ok(Primes {
            table: self,
            y,
            word: 0,
            bits: 0,
            started: false,
        })
    }

    /// Counts primes p <= x satisfying `pred`, scanning word chunks in
    /// parallel. The per-chunk counts are exact integers, so the total
    /// is independent of the chunk split and the thread count.
    pub(crate) fn count_primes_where<F>(&self, x: u64, pred: F) -> u64
    where
        F: Fn(u64) -> bool + Sync,
    {
        if x < 2 {
            return 0;
        }
        let mut count = u64::from(pred(2));
        if x < 3 {
            return count;
        }
        let last = ((if x % 2 == 0 { x - 1 } else { x }) - 3) / 2;
        let n_words = (last / 64) as usize + 1;
        const WORDS_PER_CHUNK: usize = 1 << 12;
        count += self.words[..n_words]
            .par_chunks(WORDS_PER_CHUNK)
            .enumerate()
            .map(|(ci, chunk)| {
                let mut c = 0u64;
                for (wi, &word) in chunk.iter().enumerate() {
                    let base = ((ci * WORDS_PER_CHUNK + wi) as u64) * 64;
                    let mut bits = word;
                    while bits != 0 {
                        let idx = base + bits.trailing_zeros() as u64;
                        bits &= bits - 1;
                        if idx > last {
                            break;
                        }
                        if pred(3 + 2 * idx) {
                            c += 1;
                        }
                    }
                }
                c
            })
            .sum::<u64>();
        count
    }
}

/// Odd base primes up to sqrt(limit), by a plain in-memory sieve. The
/// root is at most 2^17 at the supported ceiling, so this stays tiny.
fn base_primes(limit: u64) -> Vec<u64> {
    let root = limit.isqrt();
    if root < 3 {
        return Vec::new();
    }
    let n = root as usize;
    let mut flags = vec![true; n + 1];
    let mut primes = Vec::new();
    let mut p = 3usize;
    while p <= n {
        if flags[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                flags[m] = false;
                m += 2 * p;
            }
        }
        p += 2;
    }
    primes
}

/// Clears the composite flags in one segment. `flag_lo..flag_hi` is the
/// half-open flag range the chunk owns; flag i encodes the odd number
/// 3 + 2i.
fn mark_segment(chunk: &mut [u64], flag_lo: usize, flag_hi: usize, base: &[u64]) {
    if flag_hi <= flag_lo {
        return;
    }
    let lo_num = 3 + 2 * flag_lo as u64;
    let hi_num = 3 + 2 * (flag_hi as u64 - 1);
    for &p in base {
        let p2 = p * p;
        if p2 > hi_num {
            break;
        }
        let mut m = if p2 >= lo_num {
            p2
        } else {
            // first odd multiple of p at or above lo_num
            let mut q = lo_num.div_ceil(p);
            if q % 2 == 0 {
                q += 1;
            }
            q * p
        };
        while m <= hi_num {
            let idx = ((m - 3) / 2) as usize - flag_lo;
            chunk[idx / 64] &= !(1u64 << (idx % 64));
            m += 2 * p;
        }
    }
}

/// Ascending iterator over table primes, yielded by `primes_up_to`.
pub struct Primes<'a> {
    table: &'a PrimeTable,
    y: u64,
    word: usize,
    bits: u64,
    started: bool,
}

impl Iterator for Primes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if !self.started {
            self.started = true;
            self.bits = self.table.words.first().copied().unwrap_or(0);
            return if self.y >= 2 { Some(2) } else { None };
        }
        while self.bits == 0 {
            self.word += 1;
            if self.word >= self.table.words.len() {
                return None;
            }
            self.bits = self.table.words[self.word];
        }
        let tz = self.bits.trailing_zeros() as u64;
        self.bits &= self.bits - 1;
        let p = 3 + 2 * (self.word as u64 * 64 + tz);
        if p > self.y {
            self.word = self.table.words.len();
            self.bits = 0;
            return None;
        }
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_limits() {
        let t = PrimeTable::build(2).unwrap();
        assert_eq!(t.prime_count(2).unwrap(), 1);
        assert_eq!(t.primes_up_to(2).unwrap().collect::<Vec<_>>(), vec![2]);

        let t = PrimeTable::build(3).unwrap();
        assert_eq!(t.primes_up_to(3).unwrap().collect::<Vec<_>>(), vec![2, 3]);

        let t = PrimeTable::build(10).unwrap();
        assert_eq!(
            t.primes_up_to(10).unwrap().collect::<Vec<_>>(),
            vec![2, 3, 5, 7]
        );
        assert_eq!(t.prime_count(10).unwrap(), 4);
    }

    #[test]
    fn rejects_bad_limits() {
        assert!(matches!(PrimeTable::build(1), Err(Error::Config(_))));
        assert!(matches!(
            PrimeTable::build(MAX_SIEVE_LIMIT + 1),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            PrimeTable::build_with_segment_flags(100, 0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn out_of_range_queries_error() {
        let t = PrimeTable::build(100).unwrap();
        assert!(matches!(t.is_prime(101), Err(Error::Range(_))));
        assert!(matches!(t.is_prime(1), Err(Error::Range(_))));
        assert!(matches!(t.prime_count(101), Err(Error::Range(_))));
        assert!(matches!(t.primes_up_to(101), Err(Error::Range(_))));
    }

    #[test]
    fn segment_size_does_not_change_the_table() {
        let reference = PrimeTable::build_with_segment_flags(50_000, 1 << 20).unwrap();
        for flags in [64, 65, 100, 1 << 10, 7777] {
            let t = PrimeTable::build_with_segment_flags(50_000, flags).unwrap();
            assert_eq!(t.words, reference.words, "segment_flags = {flags}");
        }
    }

    #[test]
    fn word_boundary_counts() {
        // flag indices 62, 63, 64 map to 127, 129, 131
        let t = PrimeTable::build(200).unwrap();
        assert_eq!(t.prime_count(126).unwrap(), 30);
        assert_eq!(t.prime_count(127).unwrap(), 31);
        assert_eq!(t.prime_count(128).unwrap(), 31);
        assert_eq!(t.prime_count(131).unwrap(), 32);
    }
}

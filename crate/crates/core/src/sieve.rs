//! Segmented sieve of Eratosthenes over odd numbers.
//!
//! [`PrimeTable`] sieves `[0, limit]` once, one cache-sized block at a time,
//! and answers membership, enumeration and counting queries from the packed
//! bitset. [`SegmentedPrimes`] streams primes past the table's ceiling by
//! sieving fresh blocks on demand.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::primality::is_prime_u64;

/// Default block length in odd-number flags (2^18 flags = 32 KiB).
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 18;

/// Words per prefix-count block.
const COUNT_BLOCK_WORDS: usize = 8;

/// Primality flags for every odd number up to `limit`.
///
/// Bit `i` stands for `2i + 1`. The table is immutable after construction and
/// safe to share between threads.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    segment_size: usize,
    bits: Vec<u64>,
    /// `block_counts[j]` = number of odd primes in words `[0, j * COUNT_BLOCK_WORDS)`.
    block_counts: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        Self::with_segment_size(limit, DEFAULT_SEGMENT_SIZE)
    }

    /// Builds the table sieving `segment_size` odd flags per block.
    ///
    /// # Panics
    ///
    /// If `segment_size` is zero, or `limit` is so large the bitset cannot be
    /// addressed on this platform.
    pub fn with_segment_size(limit: u64, segment_size: usize) -> Self {
        assert!(segment_size > 0, "segment size must be positive");
        // odd values 1, 3, ..., up to the largest odd <= limit
        let flags = usize::try_from(limit / 2 + limit % 2).expect("sieve limit exceeds address space");
        let words = flags.div_ceil(64);
        let mut bits = vec![u64::MAX; words];
        if flags % 64 != 0 {
            bits[words - 1] = (1u64 << (flags % 64)) - 1;
        }
        if flags > 0 {
            bits[0] &= !1; // 1 is not prime
        }

        // Odd base primes up to sqrt(limit), by a small plain sieve.
        let root = isqrt(limit) as usize;
        let mut small = vec![true; root + 1];
        let mut base = Vec::new();
        for v in 2..=root {
            if small[v] {
                if v > 2 {
                    base.push(v as u64);
                }
                let mut m = v * v;
                while m <= root {
                    small[m] = false;
                    m += v;
                }
            }
        }

        // next[j]: index of the next odd multiple of base[j] still to clear.
        let mut next: Vec<usize> = base.iter().map(|&p| (p * p / 2) as usize).collect();
        let mut seg_lo = 0usize;
        while seg_lo < flags {
            let seg_hi = (seg_lo + segment_size).min(flags);
            for (j, &p) in base.iter().enumerate() {
                let step = p as usize;
                let mut idx = next[j];
                while idx < seg_hi {
                    bits[idx / 64] &= !(1u64 << (idx % 64));
                    idx += step;
                }
                next[j] = idx;
            }
            seg_lo = seg_hi;
        }

        let mut block_counts = Vec::with_capacity(words / COUNT_BLOCK_WORDS + 2);
        let mut acc = 0u64;
        for chunk in bits.chunks(COUNT_BLOCK_WORDS) {
            block_counts.push(acc);
            acc += chunk.iter().map(|w| w.count_ones() as u64).sum::<u64>();
        }
        block_counts.push(acc);

        PrimeTable { limit, segment_size, bits, block_counts }
    }

    /// Highest sieved value.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn segment_size(&self) -> usize {
        self.segment_size
    }

    #[inline]
    fn bit(&self, idx: u64) -> bool {
        let idx = idx as usize;
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Exact primality for any `u64`: table lookup up to the ceiling,
    /// deterministic Miller–Rabin above it.
    #[inline]
    pub fn is_prime(&self, v: u64) -> bool {
        if v <= self.limit {
            v == 2 || (v & 1 == 1 && self.bit(v / 2))
        } else {
            is_prime_u64(v)
        }
    }

    /// Primes in `[lo, hi]`, ascending; `hi` must not exceed the ceiling.
    pub fn primes_in_range(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        if lo > hi {
            return Err(Error::InvalidInput("range start exceeds range end"));
        }
        if hi > self.limit {
            return Err(Error::RangeTooLarge { hi, limit: self.limit });
        }
        Ok(self.iter_range(lo, hi).collect())
    }

    /// Iterator over table primes in `[lo, min(hi, limit)]`.
    pub fn iter_range(&self, lo: u64, hi: u64) -> TablePrimes<'_> {
        let hi = hi.min(self.limit);
        let emit_two = lo <= 2 && hi >= 2;
        // first odd index with value >= max(lo, 3)
        let start = lo.max(3);
        let idx = start / 2;
        let end = if hi >= 1 { (hi - 1) / 2 + 1 } else { 0 }; // exclusive index bound
        TablePrimes { table: self, emit_two, idx, end }
    }

    /// Primes in `[lo, hi]` with no ceiling: table data first, then blocks
    /// sieved on the fly.
    pub fn primes_between(&self, lo: u64, hi: u64) -> PrimeStream<'_> {
        let beyond = if hi > self.limit { Some(lo.max(self.limit.saturating_add(1))) } else { None };
        PrimeStream {
            table_part: Some(self.iter_range(lo, hi)),
            beyond_lo: beyond,
            hi,
            segmented: None,
            table: self,
        }
    }

    /// pi(x), the number of primes not exceeding `x`.
    pub fn prime_count(&self, x: u64) -> u64 {
        let capped = x.min(self.limit);
        let mut count = 0u64;
        if capped >= 2 {
            count += 1; // the prime 2
            if capped >= 3 {
                let last = ((capped - 1) / 2) as usize; // index of the largest odd <= capped
                let word = last / 64;
                let block = word / COUNT_BLOCK_WORDS;
                count += self.block_counts[block];
                for w in block * COUNT_BLOCK_WORDS..word {
                    count += self.bits[w].count_ones() as u64;
                }
                let rem = last % 64;
                let mask = if rem == 63 { u64::MAX } else { (1u64 << (rem + 1)) - 1 };
                count += (self.bits[word] & mask).count_ones() as u64;
            }
        }
        if x > self.limit {
            count += self.primes_between(self.limit + 1, x).count() as u64;
        }
        count
    }

    /// The `n`-th prime, 1-indexed.
    pub fn nth_prime(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::InvalidInput("prime index starts at 1"));
        }
        self.primes_between(2, u64::MAX)
            .nth((n - 1) as usize)
            .ok_or(Error::Overflow)
    }
}

/// Ascending primes read from a [`PrimeTable`].
#[derive(Debug, Clone)]
pub struct TablePrimes<'a> {
    table: &'a PrimeTable,
    emit_two: bool,
    idx: u64,
    end: u64,
}

impl Iterator for TablePrimes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.emit_two {
            self.emit_two = false;
            return Some(2);
        }
        while self.idx < self.end {
            let w = (self.idx / 64) as usize;
            let off = self.idx % 64;
            let word = self.table.bits[w] >> off;
            if word == 0 {
                self.idx = (w as u64 + 1) * 64;
                continue;
            }
            let found = self.idx + word.trailing_zeros() as u64;
            if found >= self.end {
                self.idx = self.end;
                return None;
            }
            self.idx = found + 1;
            return Some(2 * found + 1);
        }
        None
    }
}

/// Table primes followed by on-the-fly segmented primes.
#[derive(Debug)]
pub struct PrimeStream<'a> {
    table: &'a PrimeTable,
    table_part: Option<TablePrimes<'a>>,
    beyond_lo: Option<u64>,
    hi: u64,
    segmented: Option<SegmentedPrimes>,
}

impl Iterator for PrimeStream<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if let Some(part) = self.table_part.as_mut() {
            if let Some(p) = part.next() {
                return Some(p);
            }
            self.table_part = None;
        }
        if self.segmented.is_none() {
            let lo = self.beyond_lo.take()?;
            self.segmented = Some(SegmentedPrimes::with_table(
                lo,
                self.hi,
                self.table.segment_size,
                self.table,
            ));
        }
        self.segmented.as_mut()?.next()
    }
}

/// Primes in `[lo, hi]` produced block by block, without a stored table.
///
/// Base primes are extended as the blocks climb, so `hi` may be as large as
/// `u64::MAX`; cost grows with the square root of the highest block reached.
#[derive(Debug, Clone)]
pub struct SegmentedPrimes {
    hi: u64,
    segment_size: usize,
    /// Odd base primes, ascending, complete up to `base_limit`.
    base: Vec<u64>,
    base_limit: u64,
    /// Value of flag 0 in the current block (odd), or `None` before the first block.
    block_lo: u64,
    block: Vec<u64>,
    block_flags: usize,
    cursor: usize,
    emit_two: bool,
    next_block_lo: Option<u64>,
}

impl SegmentedPrimes {
    pub fn new(lo: u64, hi: u64, segment_size: usize) -> Self {
        Self::build(lo, hi, segment_size, Vec::new(), 1)
    }

    fn with_table(lo: u64, hi: u64, segment_size: usize, table: &PrimeTable) -> Self {
        let want = isqrt(hi).min(table.limit);
        let base: Vec<u64> = table.iter_range(3, want).collect();
        Self::build(lo, hi, segment_size, base, want.max(1))
    }

    fn build(lo: u64, hi: u64, segment_size: usize, base: Vec<u64>, base_limit: u64) -> Self {
        let segment_size = segment_size.max(64);
        let emit_two = lo <= 2 && hi >= 2;
        let first_odd = if lo <= 3 { 3 } else { lo | 1 };
        let next_block_lo = (first_odd <= hi).then_some(first_odd);
        SegmentedPrimes {
            hi,
            segment_size,
            base,
            base_limit,
            block_lo: 0,
            block: Vec::new(),
            block_flags: 0,
            cursor: 0,
            emit_two,
            next_block_lo,
        }
    }

    fn ensure_base(&mut self, upto: u64) {
        if upto <= self.base_limit {
            return;
        }
        let target = upto.max(self.base_limit.saturating_mul(2)).min(u32::MAX as u64);
        let small = PrimeTable::new(target);
        self.base = small.iter_range(3, target).collect();
        self.base_limit = target;
    }

    /// Sieves the next block; false when the range is exhausted.
    fn advance_block(&mut self) -> bool {
        let Some(lo) = self.next_block_lo else { return false };
        // flags for odd values lo, lo+2, ..., capped at hi
        let span = (self.hi - lo) / 2 + 1;
        let flags = span.min(self.segment_size as u64) as usize;
        let last = lo + 2 * (flags as u64 - 1);
        self.ensure_base(isqrt(last));

        let words = flags.div_ceil(64);
        self.block.clear();
        self.block.resize(words, u64::MAX);
        if flags % 64 != 0 {
            self.block[words - 1] = (1u64 << (flags % 64)) - 1;
        }
        for &p in &self.base {
            let Some(sq) = p.checked_mul(p) else { break };
            if sq > last {
                break;
            }
            // first odd multiple of p that is >= max(lo, p^2)
            let first = if sq >= lo { Some(sq) } else { lo.checked_add((p - lo % p) % p) };
            let Some(m) = first.and_then(|m| if m % 2 == 0 { m.checked_add(p) } else { Some(m) }) else {
                continue;
            };
            let mut idx = ((m - lo) / 2) as usize;
            while idx < flags {
                self.block[idx / 64] &= !(1u64 << (idx % 64));
                idx += p as usize;
            }
        }
        self.block_lo = lo;
        self.block_flags = flags;
        self.cursor = 0;
        self.next_block_lo = last.checked_add(2).filter(|&v| v <= self.hi);
        true
    }
}

impl Iterator for SegmentedPrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.emit_two {
            self.emit_two = false;
            return Some(2);
        }
        loop {
            while self.cursor < self.block_flags {
                let w = self.cursor / 64;
                let word = self.block[w] >> (self.cursor % 64);
                if word == 0 {
                    self.cursor = (w + 1) * 64;
                    continue;
                }
                let found = self.cursor + word.trailing_zeros() as usize;
                if found >= self.block_flags {
                    self.cursor = self.block_flags;
                    break;
                }
                self.cursor = found + 1;
                return Some(self.block_lo + 2 * found as u64);
            }
            if !self.advance_block() {
                return None;
            }
        }
    }
}

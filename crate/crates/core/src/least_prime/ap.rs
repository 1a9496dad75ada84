use alloc::vec::Vec;

use super::ApClass;
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::sieve::PrimeTable;

/// Least starting bound for automatic searches.
pub const DEFAULT_MIN_BOUND: u64 = 1_000_000;
/// Automatic searches double their bound up to this cap, then give up.
pub const HARD_CAP: u64 = 1 << 42;
/// `p(k)` keeps one state byte per residue, so k is capped.
pub const MAX_PK_MODULUS: u64 = 1 << 28;

/// Answer to a least-prime query in a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeastPrimeRecord {
    pub class: ApClass,
    pub prime: u64,
    /// Class members examined, starting from the residue itself.
    pub candidates_tested: u64,
    pub bound_used: u64,
}

/// `p(k, l)`: the least prime in the class, searched over `l, l + k, l + 2k, ...`
/// up to `bound`.
pub fn least_prime_in_ap(table: &PrimeTable, class: ApClass, bound: u64) -> Result<LeastPrimeRecord> {
    if bound < 2 {
        return Err(Error::InvalidInput("search bound must be at least 2"));
    }
    let step = class.modulus();
    let mut v = class.residue();
    let mut tested = 0u64;
    while v <= bound {
        tested += 1;
        if table.is_prime(v) {
            return Ok(LeastPrimeRecord { class, prime: v, candidates_tested: tested, bound_used: bound });
        }
        match v.checked_add(step) {
            Some(n) => v = n,
            None => break,
        }
    }
    Err(Error::NotFoundWithinBound { bound })
}

/// `p(k, l)` with the default schedule: start at `max(k^2, 10^6)` and double
/// until [`HARD_CAP`].
pub fn least_prime_in_ap_auto(table: &PrimeTable, class: ApClass) -> Result<LeastPrimeRecord> {
    let k = class.modulus();
    let mut bound = k.saturating_mul(k).max(DEFAULT_MIN_BOUND).min(HARD_CAP);
    loop {
        match least_prime_in_ap(table, class, bound) {
            Err(Error::NotFoundWithinBound { .. }) if bound < HARD_CAP => {
                bound = bound.saturating_mul(2).min(HARD_CAP);
            }
            other => return other,
        }
    }
}

/// `p(k)`: the largest of the least primes over every reduced class mod k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PMaxRecord {
    pub k: u64,
    pub p_k: u64,
    /// The class whose least prime is `p_k` (the last class covered).
    pub achieving_l: u64,
    pub bound_used: u64,
}

/// Streams primes in ascending order, marking the class of each, until every
/// reduced class is covered. Resumable across bounds.
struct CoverSearch {
    k: u64,
    /// 0: residue not coprime to k; 1: uncovered; 2: covered.
    state: Vec<u8>,
    remaining: u64,
    searched_to: u64,
}

impl CoverSearch {
    fn new(k: u64) -> Self {
        let state: Vec<u8> = (0..k).map(|r| u8::from(gcd(r, k) == 1)).collect();
        let remaining = state.iter().filter(|&&s| s == 1).count() as u64;
        CoverSearch { k, state, remaining, searched_to: 1 }
    }

    fn extend(&mut self, table: &PrimeTable, bound: u64) -> Option<PMaxRecord> {
        if bound <= self.searched_to {
            return None;
        }
        let k = self.k;
        for p in table.primes_between(self.searched_to + 1, bound) {
            let r = (p % k) as usize;
            if self.state[r] == 1 {
                self.state[r] = 2;
                self.remaining -= 1;
                if self.remaining == 0 {
                    self.searched_to = p;
                    return Some(PMaxRecord { k, p_k: p, achieving_l: r as u64, bound_used: bound });
                }
            }
        }
        self.searched_to = bound;
        None
    }
}

fn check_pk_modulus(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidInput("p(k) needs k >= 2"));
    }
    if k > MAX_PK_MODULUS {
        return Err(Error::InvalidInput("p(k) modulus above 2^28 is out of reach"));
    }
    Ok(())
}

pub fn p_max(table: &PrimeTable, k: u64, bound: u64) -> Result<PMaxRecord> {
    check_pk_modulus(k)?;
    CoverSearch::new(k).extend(table, bound).ok_or(Error::NotFoundWithinBound { bound })
}

/// `p(k)` with a doubling bound from `start` up to `cap`.
pub fn p_max_doubling(table: &PrimeTable, k: u64, start: u64, cap: u64) -> Result<PMaxRecord> {
    check_pk_modulus(k)?;
    let mut search = CoverSearch::new(k);
    let mut bound = start.min(cap).max(2);
    loop {
        if let Some(rec) = search.extend(table, bound) {
            return Ok(rec);
        }
        if bound >= cap {
            return Err(Error::NotFoundWithinBound { bound });
        }
        bound = bound.saturating_mul(2).min(cap);
    }
}

/// `p(k)` with the default schedule (`max(k^2, 10^6)`, doubling to [`HARD_CAP`]).
pub fn p_max_auto(table: &PrimeTable, k: u64) -> Result<PMaxRecord> {
    p_max_doubling(table, k, k.saturating_mul(k).max(DEFAULT_MIN_BOUND), HARD_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KanoldOutcome {
    /// `p(k) < k^2`.
    Holds(PMaxRecord),
    /// `p(k) >= k^2`.
    Violation(PMaxRecord),
    /// Some class had no prime below `bound`.
    Undecided { bound: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KanoldRecord {
    pub k: u64,
    pub outcome: KanoldOutcome,
}

pub fn kanold_check(table: &PrimeTable, k: u64) -> Result<KanoldRecord> {
    kanold_from(k, p_max_auto(table, k))
}

fn kanold_from(k: u64, found: Result<PMaxRecord>) -> Result<KanoldRecord> {
    let outcome = match found {
        Ok(rec) if (rec.p_k as u128) < (k as u128) * (k as u128) => KanoldOutcome::Holds(rec),
        Ok(rec) => KanoldOutcome::Violation(rec),
        Err(Error::NotFoundWithinBound { bound }) => KanoldOutcome::Undecided { bound },
        Err(e) => return Err(e),
    };
    Ok(KanoldRecord { k, outcome })
}

/// Checks `p(k) < k^2` for every k in `[k_from, k_to]`; one record per k.
pub fn kanold_scan(table: &PrimeTable, k_from: u64, k_to: u64) -> Result<Vec<KanoldRecord>> {
    if k_from < 2 || k_from > k_to {
        return Err(Error::InvalidInput("need 2 <= k_from <= k_to"));
    }
    (k_from..=k_to).map(|k| kanold_check(table, k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChowlaEntry {
    pub k: u64,
    pub p_k: u64,
    pub achieving_l: u64,
    /// `ln p(k) / ln k`.
    pub exponent: f64,
}

/// `None` when `p(k)` could not be decided under the default schedule.
pub fn chowla_entry(table: &PrimeTable, k: u64) -> Result<Option<ChowlaEntry>> {
    match p_max_auto(table, k) {
        Ok(rec) => Ok(Some(ChowlaEntry {
            k,
            p_k: rec.p_k,
            achieving_l: rec.achieving_l,
            exponent: libm::log(rec.p_k as f64) / libm::log(k as f64),
        })),
        Err(Error::NotFoundWithinBound { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChowlaReport {
    /// Sorted by exponent, largest first; ties by ascending k.
    pub profile: Vec<ChowlaEntry>,
    pub undecided: Vec<u64>,
}

impl ChowlaReport {
    pub fn max(&self) -> Option<&ChowlaEntry> {
        self.profile.first()
    }
}

pub fn chowla_exponent_scan(table: &PrimeTable, k_from: u64, k_to: u64) -> Result<ChowlaReport> {
    if k_from < 2 || k_from > k_to {
        return Err(Error::InvalidInput("need 2 <= k_from <= k_to"));
    }
    let mut profile = Vec::new();
    let mut undecided = Vec::new();
    for k in k_from..=k_to {
        match chowla_entry(table, k)? {
            Some(e) => profile.push(e),
            None => undecided.push(k),
        }
    }
    profile.sort_by(|a, b| b.exponent.total_cmp(&a.exponent).then(a.k.cmp(&b.k)));
    Ok(ChowlaReport { profile, undecided })
}

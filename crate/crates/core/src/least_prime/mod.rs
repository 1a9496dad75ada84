//! Least primes with a property: `p(k, l)`, `p(k)`, `q(m)`, `Q(m)`, the
//! threshold-constant scans built on them, and the Euclid-style generator.

mod ap;
mod coprime;
mod euclid;
mod threshold;

use core::fmt;

pub use ap::{
    chowla_entry, chowla_exponent_scan, kanold_check, kanold_scan, least_prime_in_ap,
    least_prime_in_ap_auto, p_max, p_max_auto, p_max_doubling, ChowlaEntry, ChowlaReport, MAX_PK_MODULUS,
    KanoldOutcome, KanoldRecord, LeastPrimeRecord, PMaxRecord, DEFAULT_MIN_BOUND, HARD_CAP,
};
pub use coprime::{class_primes, least_ap_coprime_prime, least_coprime_prime, ClassPrimes};
pub use euclid::{
    coprime_existence_scan, euclid_generate, least_coprime_above_one, theorem5_witness,
    CoprimeScanReport,
};
pub use threshold::{
    lemma2_min_constant, posa_threshold, qpow_threshold_scan, ThresholdParams, ThresholdReport,
};

use crate::arith::{gcd, CrtClass};
use crate::error::{Error, Result};

/// A reduced residue class `l mod k`, or no restriction at all.
///
/// The unconstrained case is its own variant so that code shared between the
/// plain-prime and progression versions of a scan never has to special-case
/// `k = 1` arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApClass {
    Unconstrained,
    Residue { modulus: u64, residue: u64 },
}

impl ApClass {
    /// `(1, 0)` is the unconstrained class; otherwise `k >= 2`,
    /// `1 <= l < k` and `gcd(k, l) = 1`.
    pub fn new(modulus: u64, residue: u64) -> Result<Self> {
        match (modulus, residue) {
            (1, 0) => Ok(ApClass::Unconstrained),
            (0 | 1, _) => Err(Error::InvalidInput("modulus 1 only pairs with residue 0")),
            (k, l) if l == 0 || l >= k => Err(Error::InvalidInput("residue must lie in [1, k-1]")),
            (k, l) if gcd(k, l) != 1 => Err(Error::InvalidInput("residue must be coprime to modulus")),
            (k, l) => Ok(ApClass::Residue { modulus: k, residue: l }),
        }
    }

    pub fn modulus(&self) -> u64 {
        match self {
            ApClass::Unconstrained => 1,
            ApClass::Residue { modulus, .. } => *modulus,
        }
    }

    pub fn residue(&self) -> u64 {
        match self {
            ApClass::Unconstrained => 0,
            ApClass::Residue { residue, .. } => *residue,
        }
    }

    pub fn is_constrained(&self) -> bool {
        matches!(self, ApClass::Residue { .. })
    }

    pub fn contains(&self, v: u64) -> bool {
        v % self.modulus() == self.residue()
    }

    /// The member `l + k*x`.
    pub fn member(&self, x: u64) -> Result<u64> {
        self.modulus()
            .checked_mul(x)
            .and_then(|kx| kx.checked_add(self.residue()))
            .ok_or(Error::Overflow)
    }

    pub fn as_crt(&self) -> CrtClass {
        CrtClass::new(self.residue(), self.modulus()).expect("class modulus is at least 1")
    }
}

impl fmt::Display for ApClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApClass::Unconstrained => f.write_str("unconstrained"),
            ApClass::Residue { modulus, residue } => write!(f, "{residue} mod {modulus}"),
        }
    }
}

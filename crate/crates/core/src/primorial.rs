//! Primorials and guarded comparisons between powers and products.
//!
//! Threshold scans compare quantities like `p^k` against `p_1 * ... * p_n`
//! that leave 64 bits quickly. They are compared through natural logs; when
//! the two logs are closer than [`LOG_GUARD`] the comparison is redone exactly
//! with big integers.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::sieve::PrimeTable;

/// Log-space differences smaller than this trigger an exact recomputation.
pub const LOG_GUARD: f64 = 1e-6;

/// `ln(p_1 * p_2 * ... * p_n)`.
pub fn primorial_log(table: &PrimeTable, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("primorial index starts at 1"));
    }
    Ok(table
        .primes_between(2, u64::MAX)
        .take(n as usize)
        .map(|p| libm::log(p as f64))
        .sum())
}

/// `p_1 * p_2 * ... * p_n`; overflows from n = 16 on.
pub fn primorial_exact(table: &PrimeTable, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("primorial index starts at 1"));
    }
    table
        .primes_between(2, u64::MAX)
        .take(n as usize)
        .try_fold(1u64, |acc, p| acc.checked_mul(p))
        .ok_or(Error::Overflow)
}

/// Decides `lhs < rhs` given both natural logs.
///
/// Outside the guard band the float comparison is trusted. Inside it, `exact`
/// is asked for the exact answer; `None` (e.g. for real-valued exponents)
/// falls back to the float comparison.
pub fn guarded_lt(lhs_log: f64, rhs_log: f64, exact: impl FnOnce() -> Option<bool>) -> bool {
    if (lhs_log - rhs_log).abs() >= LOG_GUARD {
        lhs_log < rhs_log
    } else {
        exact().unwrap_or(lhs_log < rhs_log)
    }
}

/// Exact `base^exp < product(factors)`.
pub fn pow_lt_product(base: u64, exp: u32, factors: &[u64]) -> bool {
    let lhs = BigUint::from(base).pow(exp);
    let rhs = factors.iter().fold(BigUint::from(1u32), |acc, &f| acc * f);
    lhs < rhs
}

/// Exact `product(factors) < base^exp`.
pub fn product_lt_pow(factors: &[u64], base: u64, exp: u32) -> bool {
    let lhs = factors.iter().fold(BigUint::from(1u32), |acc, &f| acc * f);
    lhs < BigUint::from(base).pow(exp)
}

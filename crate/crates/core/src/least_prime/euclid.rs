use alloc::vec::Vec;

use crate::arith::{gcd, mod_inverse};
use crate::error::{Error, Result};

/// Generates primes without a primality test: each term is the least integer
/// above 1 sharing no factor with the product of all earlier terms.
///
/// The product is never formed (it leaves 64 bits at sixteen terms); being
/// coprime to it is the same as being divisible by none of the earlier terms.
pub fn euclid_generate(count: usize) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1"));
    }
    let mut out: Vec<u64> = Vec::with_capacity(count);
    let mut b = 2u64;
    while out.len() < count {
        if out.iter().all(|&p| b % p != 0) {
            out.push(b);
        }
        b = b.checked_add(1).ok_or(Error::Overflow)?;
    }
    Ok(out)
}

/// Least `b` with `1 < b < a` and `gcd(a, b) = 1`.
pub fn least_coprime_above_one(a: u64) -> Option<u64> {
    (2..a).find(|&b| gcd(a, b) == 1)
}

/// The explicit witness `1 < k < m`, `gcd(k, m) = 1`, for `m >= 15` built
/// without ever using `m - 1`: try 3, then 5; when 15 | m write `m = 15t`
/// and use 2 for odd `t`; for even `t = 3^e d` solve `2 + 3h = r (mod d)`
/// for the least `r > 1` coprime to `3t`, and one of `2 + 3h`,
/// `2 + 3h + 3t` is coprime to m.
pub fn theorem5_witness(m: u64) -> Option<u64> {
    if m < 15 {
        return None;
    }
    if m % 3 != 0 {
        return Some(3);
    }
    if m % 5 != 0 {
        return Some(5);
    }
    let t = m / 15;
    if t % 2 == 1 {
        return Some(2);
    }
    let mut d = t;
    while d % 3 == 0 {
        d /= 3;
    }
    let three_t = t.checked_mul(3)?;
    let r = (2..).find(|&r| gcd(r, three_t) == 1)?;
    let inv3 = mod_inverse(3, d)?;
    let h = ((r - 2) % d) as u128 * inv3 as u128 % d as u128;
    let first = 2 + 3 * h as u64;
    let second = first.checked_add(three_t)?;
    [first, second]
        .into_iter()
        .find(|&c| 1 < c && c < m && gcd(c, m) == 1)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoprimeScanReport {
    /// `(a, least b)` for every scanned `a`.
    pub witnesses: Vec<(u64, u64)>,
    /// `a` with no `1 < b < a` coprime to it.
    pub violations: Vec<u64>,
    /// `m >= 15` where the explicit construction failed.
    pub theorem5_failures: Vec<u64>,
}

/// For every `2 < a <= a_bound`, the least coprime `b` in `(1, a)`, plus a
/// check of the explicit construction on `a >= 15`.
pub fn coprime_existence_scan(a_bound: u64) -> Result<CoprimeScanReport> {
    if a_bound < 3 {
        return Err(Error::InvalidInput("a_bound must be at least 3"));
    }
    let mut report = CoprimeScanReport::default();
    for a in 3..=a_bound {
        match least_coprime_above_one(a) {
            Some(b) => report.witnesses.push((a, b)),
            None => report.violations.push(a),
        }
        if a >= 15 && theorem5_witness(a).is_none() {
            report.theorem5_failures.push(a);
        }
    }
    Ok(report)
}

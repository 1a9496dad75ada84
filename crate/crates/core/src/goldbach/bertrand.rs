use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::least_prime::ApClass;
use crate::sieve::PrimeTable;

/// The least class prime strictly between `g = kx + l` and `2g`, if any.
pub fn bertrand_ap_witness(table: &PrimeTable, class: ApClass, x: u64) -> Result<Option<u64>> {
    if !class.is_constrained() {
        return Err(Error::InvalidInput("class must have modulus at least 2"));
    }
    let g = class.member(x)?;
    let two_g = g.checked_mul(2).ok_or(Error::Overflow)?;
    let k = class.modulus();
    let mut c = g + k;
    while c < two_g {
        if table.is_prime(c) {
            return Ok(Some(c));
        }
        c += k;
    }
    Ok(None)
}

/// Every `x` in `[x_from, x_to]` with no class prime in `(g, 2g)`.
pub fn bertrand_ap_check(table: &PrimeTable, class: ApClass, x_from: u64, x_to: u64) -> Result<Vec<u64>> {
    if x_from > x_to {
        return Err(Error::InvalidInput("x_from exceeds x_to"));
    }
    let mut violations = Vec::new();
    for x in x_from..=x_to {
        if bertrand_ap_witness(table, class, x)?.is_none() {
            violations.push(x);
        }
    }
    Ok(violations)
}

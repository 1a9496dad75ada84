use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::least_prime::ApClass;
use crate::sieve::PrimeTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    First,
    All,
}

/// `target = p + q` with `p < q` distinct primes, both in `class`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldbachWitness {
    pub target: u64,
    pub p: u64,
    pub q: u64,
    pub class: ApClass,
}

impl GoldbachWitness {
    /// Re-checks every invariant from scratch.
    pub fn validate(&self, table: &PrimeTable) -> bool {
        self.p < self.q
            && self.p.checked_add(self.q) == Some(self.target)
            && table.is_prime(self.p)
            && table.is_prime(self.q)
            && self.class.contains(self.p)
            && self.class.contains(self.q)
    }
}

/// Distinct-prime decompositions of an even `target >= 8`, ascending by `p`.
pub fn goldbach_decompositions(table: &PrimeTable, target: u64, mode: Mode) -> Result<Vec<GoldbachWitness>> {
    if target < 8 || target % 2 == 1 {
        return Err(Error::InvalidInput("target must be even and at least 8"));
    }
    decompose(table, ApClass::Unconstrained, target, mode)
}

/// Decompositions of `2(k*w + l)` into distinct primes both `= l (mod k)`.
pub fn ap_goldbach_decompositions(
    table: &PrimeTable,
    class: ApClass,
    w: u64,
    mode: Mode,
) -> Result<Vec<GoldbachWitness>> {
    let target = class
        .member(w)?
        .checked_mul(2)
        .ok_or(Error::Overflow)?;
    decompose(table, class, target, mode)
}

/// As [`ap_goldbach_decompositions`], addressed by the target itself, which
/// must have the form `2(k*w + l)`.
pub fn ap_goldbach_for_target(
    table: &PrimeTable,
    class: ApClass,
    target: u64,
    mode: Mode,
) -> Result<Vec<GoldbachWitness>> {
    if target % 2 == 1 || !class.contains(target / 2) {
        return Err(Error::InvalidInput("target must equal 2(k*w + l)"));
    }
    decompose(table, class, target, mode)
}

fn decompose(table: &PrimeTable, class: ApClass, target: u64, mode: Mode) -> Result<Vec<GoldbachWitness>> {
    let half = target / 2;
    let step = class.modulus();
    let mut out = Vec::new();
    // p < q means p < target / 2; q inherits the class since target = 2l (mod k)
    let mut p = class.residue();
    while p < half {
        if table.is_prime(p) && table.is_prime(target - p) {
            out.push(GoldbachWitness { target, p, q: target - p, class });
            if mode == Mode::First {
                break;
            }
        }
        p += step;
    }
    if out.is_empty() {
        return Err(Error::NoDecomposition { target });
    }
    Ok(out)
}

//! Single-variable linear forms `a*x + b` and systems of them.

mod admissible;
mod conj4;
mod f1f2;
mod matrix;

use alloc::vec::Vec;
use core::fmt;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::sieve::PrimeTable;

pub use admissible::{admissible_check, AdmissibilityVerdict};
pub use conj4::{conjecture4_least_prime, Conj4Outcome, Conj4Record, CONJ4_CAP_FACTOR};
pub use f1f2::{f1_system, f1f2_search, f2_system, DEFAULT_WIDTH, MAX_WIDTH};
pub use matrix::{matrix_prime_check, MatrixReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub a: u64,
    pub b: u64,
}

impl LinearForm {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidInput("form coefficient a must be at least 1"));
        }
        Ok(LinearForm { a, b })
    }

    /// `a*x + b`, or `None` on overflow.
    pub fn eval(&self, x: u64) -> Option<u64> {
        self.a.checked_mul(x)?.checked_add(self.b)
    }

    /// `gcd(a, b) > 1`: a fixed prime divides every value.
    pub fn is_degenerate(&self) -> bool {
        gcd(self.a, self.b) > 1
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x+{}", self.a, self.b)
    }
}

/// A non-empty list of distinct forms, order preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    forms: Vec<LinearForm>,
}

impl LinearSystem {
    pub fn new(forms: Vec<LinearForm>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::InvalidInput("a system needs at least one form"));
        }
        if forms.iter().any(|f| f.a == 0) {
            return Err(Error::InvalidInput("form coefficient a must be at least 1"));
        }
        for (i, f) in forms.iter().enumerate() {
            if forms[..i].contains(f) {
                return Err(Error::InvalidInput("forms must be distinct"));
            }
        }
        Ok(LinearSystem { forms })
    }

    /// Builds a system from `(a, b)` pairs.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, b)| LinearForm { a, b }).collect())
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// True iff every `a_i + b_i` is prime.
pub fn standard_prime_map_check(table: &PrimeTable, system: &LinearSystem) -> bool {
    system
        .forms()
        .iter()
        .all(|f| f.eval(1).is_some_and(|v| table.is_prime(v)))
}

/// The least `b < a` with `a + b` prime, for `a > 1`.
pub fn standard_map_offset(table: &PrimeTable, a: u64) -> Result<Option<u64>> {
    if a < 2 {
        return Err(Error::InvalidInput("a must exceed 1"));
    }
    Ok((0..a).find(|&b| a.checked_add(b).is_some_and(|v| table.is_prime(v))))
}

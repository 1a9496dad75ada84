use alloc::vec::Vec;

use super::ApClass;
use crate::error::{Error, Result};
use crate::sieve::{PrimeStream, PrimeTable};

/// Primes of a class in increasing order: the sequence Q_1 < Q_2 < ...
/// enumerated from `x = 0`, so the residue itself comes first when prime.
pub struct ClassPrimes<'a> {
    inner: Inner<'a>,
}

enum Inner<'a> {
    All(PrimeStream<'a>),
    Stepping { table: &'a PrimeTable, next: Option<u64>, step: u64 },
}

impl<'a> ClassPrimes<'a> {
    pub fn new(table: &'a PrimeTable, class: ApClass) -> Self {
        let inner = match class {
            ApClass::Unconstrained => Inner::All(table.primes_between(2, u64::MAX)),
            ApClass::Residue { modulus, residue } => {
                Inner::Stepping { table, next: Some(residue), step: modulus }
            }
        };
        ClassPrimes { inner }
    }
}

impl Iterator for ClassPrimes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        match &mut self.inner {
            Inner::All(stream) => stream.next(),
            Inner::Stepping { table, next, step } => loop {
                let v = (*next)?;
                *next = v.checked_add(*step);
                if table.is_prime(v) {
                    return Some(v);
                }
            },
        }
    }
}

/// The first `count` primes of the class, all at most `bound`.
pub fn class_primes(table: &PrimeTable, class: ApClass, count: usize, bound: u64) -> Result<Vec<u64>> {
    let out: Vec<u64> = ClassPrimes::new(table, class)
        .take_while(|&p| p <= bound)
        .take(count)
        .collect();
    if out.len() < count {
        return Err(Error::NotFoundWithinBound { bound });
    }
    Ok(out)
}

/// `q(m)`: the least prime not dividing `m`.
pub fn least_coprime_prime(table: &PrimeTable, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive"));
    }
    // at most 15 primes divide a u64, so this ends within the first 16 primes
    Ok(table
        .primes_between(2, u64::MAX)
        .find(|&p| m % p != 0)
        .expect("a u64 has fewer than 16 distinct prime factors"))
}

/// `Q(m)`: the least prime of the class coprime to `m`, if at most `bound`.
pub fn least_ap_coprime_prime(table: &PrimeTable, class: ApClass, m: u64, bound: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive"));
    }
    ClassPrimes::new(table, class)
        .take_while(|&p| p <= bound)
        .find(|&p| m % p != 0)
        .ok_or(Error::NotFoundWithinBound { bound })
}

use alloc::collections::BTreeSet;

use crate::arith::{distinct_prime_factors, gcd, mod_inverse, mul_mod};
use crate::primality::is_prime_u64;

use super::LinearSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibilityVerdict {
    Admissible,
    /// `prime` divides the product of the forms at every integer.
    Blocked { prime: u64 },
    /// Form `index` has `prime | gcd(a, b)`.
    Degenerate { index: usize, prime: u64 },
}

impl AdmissibilityVerdict {
    pub fn is_admissible(&self) -> bool {
        matches!(self, AdmissibilityVerdict::Admissible)
    }

    pub fn blocking_prime(&self) -> Option<u64> {
        match *self {
            AdmissibilityVerdict::Admissible => None,
            AdmissibilityVerdict::Blocked { prime } | AdmissibilityVerdict::Degenerate { prime, .. } => {
                Some(prime)
            }
        }
    }
}

/// A system is admissible when no prime divides the product of its forms at
/// every integer.
///
/// A form with `p | a` takes the constant value `b` mod p, so after ruling
/// out degenerate forms it kills no residue; every other form kills exactly
/// one. With m forms only primes `p <= m` can therefore run out of residues.
pub fn admissible_check(system: &LinearSystem) -> AdmissibilityVerdict {
    for (index, f) in system.forms().iter().enumerate() {
        let g = gcd(f.a, f.b);
        if g > 1 {
            let prime = distinct_prime_factors(g)[0];
            return AdmissibilityVerdict::Degenerate { index, prime };
        }
    }
    let m = system.len() as u64;
    for p in (2..=m).filter(|&p| is_prime_u64(p)) {
        if blocks(system, p) {
            return AdmissibilityVerdict::Blocked { prime: p };
        }
    }
    AdmissibilityVerdict::Admissible
}

fn blocks(system: &LinearSystem, p: u64) -> bool {
    let mut killed = BTreeSet::new();
    for f in system.forms() {
        let a = f.a % p;
        let b = f.b % p;
        if a == 0 {
            if b == 0 {
                return true;
            }
            continue;
        }
        let inv = mod_inverse(a, p).expect("p is prime and does not divide a");
        killed.insert(mul_mod((p - b) % p, inv, p));
    }
    killed.len() as u64 == p
}

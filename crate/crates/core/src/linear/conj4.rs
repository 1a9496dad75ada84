use crate::arith::{crt_merge, gcd, CrtClass};
use crate::error::{Error, Result};
use crate::least_prime::ApClass;
use crate::sieve::PrimeTable;

/// The search continues to this multiple of `(dk)^(2-eps)` before giving up.
pub const CONJ4_CAP_FACTOR: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Conj4Outcome {
    /// Least prime found below the bound.
    Within,
    /// Least prime found, but at or above the bound.
    Violation,
    /// Nothing found up to the extended cap.
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conj4Record {
    pub class: ApClass,
    pub d: u64,
    pub a: u64,
    pub epsilon: f64,
    pub merged: CrtClass,
    pub q: Option<u64>,
    /// `(dk)^(2-eps)`
    pub bound: f64,
    pub outcome: Conj4Outcome,
}

impl Conj4Record {
    pub fn within_bound(&self) -> bool {
        self.outcome == Conj4Outcome::Within
    }
}

/// Least prime `q = a (mod d)`, `q = l (mod k)`, compared with `(dk)^(2-eps)`.
pub fn conjecture4_least_prime(
    table: &PrimeTable,
    class: ApClass,
    d: u64,
    a: u64,
    epsilon: f64,
) -> Result<Conj4Record> {
    if !class.is_constrained() {
        return Err(Error::InvalidInput("class must have modulus at least 2"));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidInput("epsilon must lie in (0, 0.5)"));
    }
    if a == 0 || a >= d {
        return Err(Error::InvalidInput("need 1 <= a < d"));
    }
    let k = class.modulus();
    if gcd(d, k) != 1 {
        return Err(Error::NonCoprimeModuli { m1: d, m2: k });
    }
    if gcd(a, d) != 1 {
        return Err(Error::InvalidInput("a must be coprime to d"));
    }
    let merged = crt_merge(CrtClass::new(a, d)?, class.as_crt())?;
    let bound = libm::pow(merged.modulus() as f64, 2.0 - epsilon);
    let cap_f = libm::floor(bound * CONJ4_CAP_FACTOR);
    let cap = if cap_f >= u64::MAX as f64 { u64::MAX } else { cap_f as u64 };

    let mut q = None;
    let mut c = merged.residue();
    while c <= cap {
        if table.is_prime(c) {
            q = Some(c);
            break;
        }
        c = match c.checked_add(merged.modulus()) {
            Some(v) => v,
            None => break,
        };
    }
    let outcome = match q {
        Some(q) if (q as f64) < bound => Conj4Outcome::Within,
        Some(_) => Conj4Outcome::Violation,
        None => Conj4Outcome::Undecided,
    };
    Ok(Conj4Record { class, d, a, epsilon, merged, q, bound, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = PrimeTable::new(100_000);
        let r = conjecture4_least_prime(&t, ApClass::new(4, 3).unwrap(), 5, 2, 0.1).unwrap();
        assert_eq!((r.q, r.merged.residue(), r.merged.modulus()), (Some(7), 7, 20));
        assert!((r.bound - 296.45).abs() < 0.01);
        assert!(r.within_bound());
        let r = conjecture4_least_prime(&t, ApClass::new(3, 2).unwrap(), 7, 4, 0.3).unwrap();
        assert_eq!((r.q, r.merged.residue()), (Some(11), 11));
        assert!((r.bound - 176.92).abs() < 0.01);
        assert!(r.within_bound());
        assert_eq!(
            conjecture4_least_prime(&t, ApClass::new(3, 2).unwrap(), 3, 1, 0.1),
            Err(Error::NonCoprimeModuli { m1: 3, m2: 3 })
        );
    }

    #[test]
    fn preconditions() {
        let t = PrimeTable::new(1000);
        let c = ApClass::new(4, 3).unwrap();
        assert!(conjecture4_least_prime(&t, ApClass::Unconstrained, 5, 2, 0.1).is_err());
        assert!(conjecture4_least_prime(&t, c, 5, 0, 0.1).is_err());
        assert!(conjecture4_least_prime(&t, c, 5, 5, 0.1).is_err());
        assert!(conjecture4_least_prime(&t, c, 9, 3, 0.1).is_err());
        assert!(conjecture4_least_prime(&t, c, 5, 2, 0.0).is_err());
        assert!(conjecture4_least_prime(&t, c, 5, 2, 0.5).is_err());
        assert!(conjecture4_least_prime(&t, c, 5, 2, f64::NAN).is_err());
    }

    #[test]
    fn least_prime_matches_direct_scan() {
        let t = PrimeTable::new(1_000_000);
        for (k, l) in [(3u64, 2u64), (4, 3), (5, 2)] {
            let c = ApClass::new(k, l).unwrap();
            for d in 2..200u64 {
                if gcd(d, k) != 1 {
                    continue;
                }
                for a in (1..d).filter(|&a| gcd(a, d) == 1) {
                    let r = conjecture4_least_prime(&t, c, d, a, 0.1).unwrap();
                    let want = (2..).find(|&q| q % d == a && q % k == l && t.is_prime(q));
                    assert_eq!(r.q, want);
                    let q = r.q.unwrap();
                    assert!(q % d == a && q % k == l);
                }
            }
        }
    }
}

//! Coprime-difference witnesses.
//!
//! For `n > 6` a witness is an odd prime `p_r < n`, coprime to n, such that
//! `2n - p_r` shares no factor with any `2n - p_i` over the other odd primes
//! `p_i < n`. The progression version replaces the odd primes with the class
//! primes `Q <= kn + l` and requires `r >= 2`.
//!
//! Two routes decide a candidate:
//!
//! - fast path: `2n - p_r` is itself prime. It exceeds n, so it can divide
//!   `2n - p_i < 2n` only by equality, i.e. `p_i = p_r`;
//! - slow path: factor `2n - p_r` and, for each prime factor `s`, look for a
//!   second sibling `p_i = 2n (mod s)` by stepping through that residue class.
//!
//! The exhaustive gcd table is kept separately as an independent check.

use alloc::vec::Vec;

use crate::arith::{crt_merge, distinct_prime_factors, gcd, CrtClass};
use crate::error::{Error, Result};
use crate::least_prime::{ApClass, ClassPrimes};
use crate::sieve::PrimeTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conj2Witness {
    pub n: u64,
    pub p_r: u64,
    /// `2n - p_r`
    pub difference: u64,
    /// The difference is prime.
    pub fast_path: bool,
}

/// The smallest witness for `n`, or [`Error::NoWitness`].
pub fn conjecture2_witness(table: &PrimeTable, n: u64) -> Result<Conj2Witness> {
    if n <= 6 {
        return Err(Error::InvalidInput("n must exceed 6"));
    }
    let two_n = n.checked_mul(2).ok_or(Error::Overflow)?;
    for p in table.primes_between(3, n - 1) {
        if gcd(p, n) != 1 {
            continue;
        }
        let difference = two_n - p;
        if table.is_prime(difference) {
            return Ok(Conj2Witness { n, p_r: p, difference, fast_path: true });
        }
        if slow_path_ok(table, two_n, difference, p, ApClass::Unconstrained, n - 1)? {
            return Ok(Conj2Witness { n, p_r: p, difference, fast_path: false });
        }
    }
    Err(Error::NoWitness { n })
}

/// True when no sibling other than `own` lies in `2v = x (mod s)` for any
/// prime factor `s` of `difference`. Siblings are odd primes of `class`
/// not exceeding `sibling_max`.
fn slow_path_ok(
    table: &PrimeTable,
    two_v: u64,
    difference: u64,
    own: u64,
    class: ApClass,
    sibling_max: u64,
) -> Result<bool> {
    for s in distinct_prime_factors(difference) {
        let target = CrtClass::new(two_v % s, s)?;
        let merged = match crt_merge(class.as_crt(), target) {
            Ok(c) => c,
            // s | k cannot divide a difference of class members; nothing to find.
            Err(Error::NonCoprimeModuli { .. }) => continue,
            Err(e) => return Err(e),
        };
        let mut c = merged.residue();
        while c <= sibling_max {
            if c != own && c % 2 == 1 && table.is_prime(c) {
                return Ok(false);
            }
            c = match c.checked_add(merged.modulus()) {
                Some(v) => v,
                None => break,
            };
        }
    }
    Ok(true)
}

/// Full pairwise gcd check of a claimed witness; quadratic, for validation only.
pub fn conj2_exhaustive_check(table: &PrimeTable, n: u64, p_r: u64) -> bool {
    if n <= 6 || p_r >= n || p_r % 2 == 0 || !table.is_prime(p_r) || gcd(p_r, n) != 1 {
        return false;
    }
    let two_n = 2 * n;
    let d = two_n - p_r;
    table
        .primes_between(3, n - 1)
        .filter(|&p| p != p_r)
        .all(|p| gcd(d, two_n - p) == 1)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Conj2ScanReport {
    pub witnesses: Vec<Conj2Witness>,
    pub counterexamples: Vec<u64>,
    pub fast_path_hits: u64,
}

impl Conj2ScanReport {
    pub fn fast_path_rate(&self) -> f64 {
        if self.witnesses.is_empty() {
            0.0
        } else {
            self.fast_path_hits as f64 / self.witnesses.len() as f64
        }
    }
}

pub fn conjecture2_scan(table: &PrimeTable, n_from: u64, n_to: u64) -> Result<Conj2ScanReport> {
    if n_from <= 6 || n_from > n_to {
        return Err(Error::InvalidInput("need 6 < n_from <= n_to"));
    }
    let mut report = Conj2ScanReport::default();
    for n in n_from..=n_to {
        match conjecture2_witness(table, n) {
            Ok(w) => {
                report.fast_path_hits += u64::from(w.fast_path);
                report.witnesses.push(w);
            }
            Err(Error::NoWitness { n }) => report.counterexamples.push(n),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conj3Witness {
    pub class: ApClass,
    pub n: u64,
    /// `kn + l`
    pub value: u64,
    pub q_r: u64,
    /// 1-based position of `q_r` among the class primes.
    pub index: u64,
    /// `2(kn + l) - q_r`
    pub difference: u64,
}

/// The smallest progression witness `Q_r` (`r >= 2`) for `kn + l`.
pub fn conjecture3_witness(table: &PrimeTable, class: ApClass, n: u64) -> Result<Conj3Witness> {
    if !class.is_constrained() {
        return Err(Error::InvalidInput("class must have modulus at least 2"));
    }
    let value = class.member(n)?;
    let two_v = value.checked_mul(2).ok_or(Error::Overflow)?;
    let below: Vec<u64> = ClassPrimes::new(table, class).take_while(|&q| q < value).collect();
    if below.len() < 2 {
        return Err(Error::DegenerateInput { n });
    }
    for (i, &q) in below.iter().enumerate().skip(1) {
        if gcd(value, q) != 1 {
            continue;
        }
        let difference = two_v - q;
        let witness = Conj3Witness { class, n, value, q_r: q, index: i as u64 + 1, difference };
        if table.is_prime(difference) || slow_path_ok(table, two_v, difference, q, class, value)? {
            return Ok(witness);
        }
    }
    Err(Error::NoWitness { n })
}

/// Full pairwise gcd check of a claimed progression witness.
pub fn conj3_exhaustive_check(table: &PrimeTable, class: ApClass, n: u64, q_r: u64) -> bool {
    let Ok(value) = class.member(n) else { return false };
    let primes: Vec<u64> = ClassPrimes::new(table, class).take_while(|&q| q <= value).collect();
    let Some(pos) = primes.iter().position(|&q| q == q_r) else { return false };
    if pos == 0 || q_r >= value || gcd(value, q_r) != 1 {
        return false;
    }
    let two_v = 2 * value;
    let d = two_v - q_r;
    primes.iter().filter(|&&q| q != q_r).all(|&q| gcd(d, two_v - q) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: the first odd prime passing the exhaustive table.
    fn conj2_oracle(t: &PrimeTable, n: u64) -> Option<u64> {
        (3..n).find(|&p| conj2_exhaustive_check(t, n, p))
    }

    #[test]
    fn conj2_examples() {
        let t = PrimeTable::new(100_000);
        let w = conjecture2_witness(&t, 7).unwrap();
        assert_eq!((w.p_r, w.difference), (3, 11));
        assert_eq!(conjecture2_witness(&t, 8).unwrap().p_r, 3);
        let w = conjecture2_witness(&t, 25).unwrap();
        assert_eq!((w.p_r, w.difference, w.fast_path), (3, 47, true));
        assert!(conjecture2_witness(&t, 6).is_err());
    }

    #[test]
    fn conj2_matches_exhaustive_oracle() {
        let t = PrimeTable::new(100_000);
        for n in 7..=1500 {
            let w = conjecture2_witness(&t, n).unwrap();
            assert_eq!(Some(w.p_r), conj2_oracle(&t, n), "n = {n}");
            assert!(conj2_exhaustive_check(&t, n, w.p_r));
        }
    }

    #[test]
    fn fast_path_soundness() {
        // Whenever 2n = p + q with distinct primes and gcd(p, n) = 1, p passes
        // the exhaustive check.
        let t = PrimeTable::new(100_000);
        for n in 7..=2000u64 {
            for p in t.iter_range(3, n - 1) {
                if gcd(p, n) == 1 && t.is_prime(2 * n - p) {
                    assert!(conj2_exhaustive_check(&t, n, p), "n = {n}, p = {p}");
                }
            }
            assert!(conjecture2_witness(&t, n).is_ok());
        }
    }

    #[test]
    fn conj2_scan_small() {
        let t = PrimeTable::new(100_000);
        let r = conjecture2_scan(&t, 7, 100).unwrap();
        assert_eq!(r.witnesses.len(), 94);
        assert!(r.counterexamples.is_empty());
        assert!(r.fast_path_rate() > 0.0 && r.fast_path_rate() <= 1.0);
        assert_eq!(conjecture2_scan(&t, 7, 7).unwrap().witnesses[0].p_r, 3);
        assert!(conjecture2_scan(&t, 6, 10).is_err());
    }

    #[test]
    fn conj3_examples() {
        let t = PrimeTable::new(100_000);
        let c52 = ApClass::new(5, 2).unwrap();
        let w = conjecture3_witness(&t, c52, 10).unwrap();
        assert_eq!((w.value, w.q_r, w.index, w.difference), (52, 7, 2, 97));
        let c43 = ApClass::new(4, 3).unwrap();
        let w = conjecture3_witness(&t, c43, 5).unwrap();
        assert_eq!((w.value, w.q_r, w.index, w.difference), (23, 11, 3, 35));
        assert!(!conj3_exhaustive_check(&t, c43, 5, 7)); // gcd(39, 27) = 3
        assert_eq!(conjecture3_witness(&t, c52, 1), Err(Error::DegenerateInput { n: 1 }));
        assert!(conjecture3_witness(&t, ApClass::Unconstrained, 10).is_err());
    }

    #[test]
    fn conj3_matches_exhaustive_oracle() {
        let t = PrimeTable::new(100_000);
        for (k, l) in [(5u64, 2u64), (4, 3), (3, 1), (3, 2), (10, 7)] {
            let class = ApClass::new(k, l).unwrap();
            for n in 1..=400 {
                let value = k * n + l;
                let oracle = ClassPrimes::new(&t, class)
                    .take_while(|&q| q < value)
                    .find(|&q| conj3_exhaustive_check(&t, class, n, q));
                match conjecture3_witness(&t, class, n) {
                    Ok(w) => {
                        assert_eq!(Some(w.q_r), oracle, "class {class}, n = {n}");
                    }
                    Err(Error::DegenerateInput { .. }) => {
                        assert!(ClassPrimes::new(&t, class).take_while(|&q| q < value).count() < 2);
                    }
                    Err(Error::NoWitness { .. }) => assert_eq!(oracle, None),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

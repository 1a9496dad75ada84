//! Empirical threshold constants.
//!
//! Each scan walks its domain upward, records every point where the target
//! inequality fails, and reports the constant just past the last failure.

use alloc::vec::Vec;

use super::coprime::ClassPrimes;
use super::ApClass;
use crate::arith::checked_pow_u128;
use crate::error::{Error, Result};
use crate::primorial::{guarded_lt, pow_lt_product, product_lt_pow};
use crate::sieve::PrimeTable;

/// Parameters of a threshold scan. Which fields are used depends on the scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdParams {
    /// The power `k` (or `r`, `h`) on the least prime.
    pub k_exp: u32,
    /// Range exponent: `m < n^alpha`.
    pub alpha: Option<f64>,
    /// Switches the inequality to `2^(1/eps) * q^((2-eps)/eps) < n`.
    pub epsilon: Option<f64>,
    pub class: ApClass,
}

impl ThresholdParams {
    pub fn power(k_exp: u32, class: ApClass) -> Self {
        ThresholdParams { k_exp, alpha: None, epsilon: None, class }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub params: ThresholdParams,
    /// Least C with the inequality holding on `[C, scan_bound]`.
    pub empirical_constant: u64,
    pub scan_start: u64,
    pub scan_bound: u64,
    /// Every scanned point where the inequality fails, ascending.
    pub violations: Vec<u64>,
    /// The product-of-initial-primes constant the existence argument builds,
    /// when it fits in 64 bits.
    pub constructive_bound: Option<u64>,
}

impl ThresholdReport {
    /// False when the last scanned point still fails, so no stable region was seen.
    pub fn established(&self) -> bool {
        self.empirical_constant <= self.scan_bound
    }

    fn from_violations(params: ThresholdParams, scan_start: u64, scan_bound: u64, violations: Vec<u64>) -> Self {
        let empirical_constant = violations.last().map_or(scan_start, |&v| v + 1);
        ThresholdReport { params, empirical_constant, scan_start, scan_bound, violations, constructive_bound: None }
    }
}

/// Least C with `Q(m)^k < m` for all `C <= m <= scan_bound` (`q(m)` when the
/// class is unconstrained).
pub fn lemma2_min_constant(
    table: &PrimeTable,
    k_exp: u32,
    class: ApClass,
    scan_bound: u64,
) -> Result<ThresholdReport> {
    if k_exp == 0 {
        return Err(Error::InvalidInput("exponent must be at least 1"));
    }
    if scan_bound < 2 {
        return Err(Error::InvalidInput("scan bound must be at least 2"));
    }
    // A u64 has at most 15 distinct prime factors, so Q(m) is among the first 16.
    let seq: Vec<u64> = ClassPrimes::new(table, class).take(16).collect();
    let mut violations = Vec::new();
    for m in 1..=scan_bound {
        let q = *seq.iter().find(|&&p| m % p != 0).expect("fewer than 16 prime factors");
        let holds = checked_pow_u128(q, k_exp).is_some_and(|v| v < m as u128);
        if !holds {
            violations.push(m);
        }
    }
    let params = ThresholdParams::power(k_exp, class);
    let mut report = ThresholdReport::from_violations(params, 1, scan_bound, violations);
    let posa = posa_threshold(table, k_exp, class, 200)?;
    report.constructive_bound = ClassPrimes::new(table, class)
        .take(posa.empirical_constant as usize)
        .try_fold(1u64, |acc, p| acc.checked_mul(p));
    Ok(report)
}

/// Least index `n_k` with `S_{n+1}^k < S_1 * ... * S_n` for all
/// `n_k <= n <= n_bound`, where S is the prime sequence of the class.
pub fn posa_threshold(table: &PrimeTable, k_exp: u32, class: ApClass, n_bound: u64) -> Result<ThresholdReport> {
    if k_exp == 0 {
        return Err(Error::InvalidInput("exponent must be at least 1"));
    }
    if n_bound < 2 {
        return Err(Error::InvalidInput("n_bound must be at least 2"));
    }
    let len = usize::try_from(n_bound + 1).map_err(|_| Error::Overflow)?;
    let seq: Vec<u64> = ClassPrimes::new(table, class).take(len).collect();
    if seq.len() < len {
        return Err(Error::Overflow);
    }
    let mut violations = Vec::new();
    let mut product_log = 0.0f64;
    for n in 1..=n_bound as usize {
        product_log += libm::log(seq[n - 1] as f64);
        let next = seq[n];
        let lhs = k_exp as f64 * libm::log(next as f64);
        let holds = guarded_lt(lhs, product_log, || Some(pow_lt_product(next, k_exp, &seq[..n])));
        if !holds {
            violations.push(n as u64);
        }
    }
    Ok(ThresholdReport::from_violations(ThresholdParams::power(k_exp, class), 1, n_bound, violations))
}

/// Least C such that for every n in `[C, n_bound]` and every `m < n^alpha`
/// the least (class) prime coprime to m satisfies the target inequality:
/// `Q(m)^k < n`, or with `epsilon`,
/// `2^(1/eps) Q(m)^((2-eps)/eps) [k^((2-eps)/eps)] < n`.
///
/// With `epsilon` and a constrained class the m-range widens by
/// `k^(3-eps)` and n runs over primes only.
///
/// Q(m) = Q_{j+1} forces `Q_1 * ... * Q_j | m`, so the worst m below a limit
/// X is the longest initial product still below X; only those products are
/// visited.
pub fn qpow_threshold_scan(table: &PrimeTable, params: ThresholdParams, n_bound: u64) -> Result<ThresholdReport> {
    let alpha = params.alpha.ok_or(Error::InvalidInput("alpha is required"))?;
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidInput("alpha must be a finite non-negative real"));
    }
    if params.k_exp == 0 {
        return Err(Error::InvalidInput("exponent must be at least 1"));
    }
    if let Some(eps) = params.epsilon {
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::InvalidInput("epsilon must lie in (0, 0.5)"));
        }
    }
    if n_bound < 4 {
        return Err(Error::InvalidInput("n_bound must be at least 4"));
    }

    let k = params.class.modulus();
    let widened = params.epsilon.is_some() && params.class.is_constrained();
    let extra_range_log = match params.epsilon {
        Some(eps) if widened => (3.0 - eps) * libm::log(k as f64),
        _ => 0.0,
    };
    let int_alpha = (libm::trunc(alpha) == alpha && alpha <= u32::MAX as f64).then_some(alpha as u32);
    let exact_range = !widened && int_alpha.is_some();

    let lhs_log = |q: u64| -> f64 {
        match params.epsilon {
            None => params.k_exp as f64 * libm::log(q as f64),
            Some(eps) => {
                let e = (2.0 - eps) / eps;
                let mut v = libm::log(2.0) / eps + e * libm::log(q as f64);
                if params.class.is_constrained() {
                    v += e * libm::log(k as f64);
                }
                v
            }
        }
    };

    let mut seq = ClassPrimes::new(table, params.class);
    // terms[i] = S_{i+1}; prefix_log[j] = ln(S_1 * ... * S_j)
    let mut terms: Vec<u64> = Vec::new();
    let mut prefix_log: Vec<f64> = alloc::vec![0.0];
    let mut j = 0usize; // current longest prefix below the m-limit
    let mut violations = Vec::new();

    for n in 2..=n_bound {
        if widened && !table.is_prime(n) {
            continue;
        }
        let range_log = alpha * libm::log(n as f64) + extra_range_log;
        // no m with 1 <= m < X when X <= 1
        let any_m = guarded_lt(0.0, range_log, || {
            int_alpha.filter(|_| exact_range).map(|a| product_lt_pow(&[], n, a))
        });
        if !any_m {
            continue;
        }
        loop {
            while terms.len() <= j + 1 {
                let next = seq.next().ok_or(Error::Overflow)?;
                terms.push(next);
                let last = *prefix_log.last().unwrap();
                prefix_log.push(last + libm::log(next as f64));
            }
            let below = guarded_lt(prefix_log[j + 1], range_log, || {
                if exact_range {
                    Some(product_lt_pow(&terms[..=j], n, int_alpha.unwrap()))
                } else {
                    None
                }
            });
            if !below {
                break;
            }
            j += 1;
        }
        let q = terms[j];
        let holds = guarded_lt(lhs_log(q), libm::log(n as f64), || match params.epsilon {
            None => Some(checked_pow_u128(q, params.k_exp).is_some_and(|v| v < n as u128)),
            Some(_) => None,
        });
        if !holds {
            violations.push(n);
        }
    }
    Ok(ThresholdReport::from_violations(params, 2, n_bound, violations))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct oracle: q(m) by trial, over every m.
    fn q_oracle(m: u64, class: ApClass) -> u64 {
        let is_p = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        (0..)
            .map(|x| class.residue() + class.modulus() * x)
            .find(|&v| is_p(v) && m % v != 0)
            .unwrap()
    }

    fn lemma2_oracle(k: u32, bound: u64, class: ApClass) -> (u64, Vec<u64>) {
        let bad: Vec<u64> = (1..=bound)
            .filter(|&m| (q_oracle(m, class) as u128).pow(k) >= m as u128)
            .collect();
        (bad.last().map_or(1, |v| v + 1), bad)
    }

    /// Brute-force oracle over every m < n^alpha (integer alpha only).
    fn qpow_oracle(k: u32, alpha: u32, bound: u64) -> u64 {
        let mut last_fail = None;
        for n in 2..=bound {
            let lim = (n as u128).pow(alpha);
            let worst = (1..lim.min(1 << 20) as u64)
                .map(|m| q_oracle(m, ApClass::Unconstrained))
                .max();
            if let Some(q) = worst {
                if (q as u128).pow(k) >= n as u128 {
                    last_fail = Some(n);
                }
            }
        }
        last_fail.map_or(2, |v| v + 1)
    }

    #[test]
    fn lemma2_examples() {
        let t = PrimeTable::new(1000);
        let u = ApClass::Unconstrained;
        let (c1, v1) = lemma2_oracle(1, 10_000, u);
        assert_eq!((c1, v1.as_slice()), (3, &[1u64, 2][..]));
        let r = lemma2_min_constant(&t, 1, u, 10_000).unwrap();
        assert_eq!((r.empirical_constant, r.violations.clone()), (3, v1));

        let (c2, v2) = lemma2_oracle(2, 10_000, u);
        assert_eq!(c2, 31);
        assert_eq!(v2, [1, 2, 3, 4, 6, 8, 12, 18, 24, 30]);
        let r = lemma2_min_constant(&t, 2, u, 10_000).unwrap();
        assert_eq!(r.empirical_constant, 31);
        assert_eq!(r.violations, v2);
        assert_eq!(r.constructive_bound, Some(210));

        let r = lemma2_min_constant(&t, 1, u, 2).unwrap();
        assert_eq!((r.empirical_constant, r.violations.as_slice()), (3, &[1u64, 2][..]));
        assert!(!r.established());
    }

    #[test]
    fn lemma2_in_a_class_matches_oracle() {
        let t = PrimeTable::new(1000);
        for (k, l) in [(4u64, 3u64), (5, 2), (3, 1)] {
            let class = ApClass::new(k, l).unwrap();
            for exp in 1..=2 {
                let (c, v) = lemma2_oracle(exp, 3000, class);
                let r = lemma2_min_constant(&t, exp, class, 3000).unwrap();
                assert_eq!((r.empirical_constant, r.violations), (c, v), "class {class} k={exp}");
            }
        }
    }

    #[test]
    fn posa_examples() {
        let t = PrimeTable::new(100_000);
        let u = ApClass::Unconstrained;
        let r = posa_threshold(&t, 2, u, 1000).unwrap();
        assert_eq!((r.empirical_constant, r.violations.as_slice()), (4, &[1u64, 2, 3][..]));
        let r = posa_threshold(&t, 1, u, 1000).unwrap();
        assert_eq!((r.empirical_constant, r.violations.as_slice()), (2, &[1u64][..]));
        // Q-sequence 2, 7, 17, 37, 47: fails at n = 1, 2, 3 (37^2 = 1369 > 238),
        // holds from n = 4 (47^2 = 2209 < 8806)
        let r = posa_threshold(&t, 2, ApClass::new(5, 2).unwrap(), 1000).unwrap();
        assert_eq!((r.empirical_constant, r.violations.as_slice()), (4, &[1u64, 2, 3][..]));
    }

    #[test]
    fn qpow_examples() {
        let t = PrimeTable::new(10_000);
        let mk = |k_exp, alpha| ThresholdParams {
            k_exp,
            alpha: Some(alpha),
            epsilon: None,
            class: ApClass::Unconstrained,
        };
        assert_eq!(qpow_oracle(1, 1, 1000), 4);
        assert_eq!(qpow_threshold_scan(&t, mk(1, 1.0), 1000).unwrap().empirical_constant, 4);
        assert_eq!(qpow_oracle(2, 1, 1000), 50);
        let r = qpow_threshold_scan(&t, mk(2, 1.0), 1000).unwrap();
        assert_eq!(r.empirical_constant, 50);
        assert_eq!(*r.violations.last().unwrap(), 49);
        let r = qpow_threshold_scan(&t, mk(2, 0.0), 1000).unwrap();
        assert_eq!((r.empirical_constant, r.violations.len()), (2, 0));
        // alpha = 2 against the oracle on a smaller range
        assert_eq!(
            qpow_threshold_scan(&t, mk(1, 2.0), 300).unwrap().empirical_constant,
            qpow_oracle(1, 2, 300)
        );
    }

    #[test]
    fn qpow_corollary_form_is_monotone_and_validated() {
        let t = PrimeTable::new(1_000_000);
        let p = ThresholdParams {
            k_exp: 1,
            alpha: Some(1.9),
            epsilon: Some(0.4),
            class: ApClass::Unconstrained,
        };
        // worst case q = 41 on n^1.9 in (P_12, P_13]; 2^2.5 * 41^4 = 15984918.12
        let r = qpow_threshold_scan(&t, p, 20_000_000).unwrap();
        assert!(r.established());
        assert_eq!(r.empirical_constant, 15_984_919);
        assert!(!qpow_threshold_scan(&t, p, 200_000).unwrap().established());
        assert_eq!(*r.violations.last().unwrap() + 1, r.empirical_constant);
        assert!(qpow_threshold_scan(&t, ThresholdParams { epsilon: Some(0.6), ..p }, 100).is_err());
        assert!(qpow_threshold_scan(&t, ThresholdParams { alpha: None, ..p }, 100).is_err());
    }
}

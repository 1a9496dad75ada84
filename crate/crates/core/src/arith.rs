//! Integer helpers: gcd, modular arithmetic, CRT merging, totients.
//!
//! Everything here uses checked 64-bit arithmetic (128-bit intermediates where
//! a product is reduced immediately). Nothing wraps silently.

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u64;
    // f64 is off by at most a few units near 2^64.
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Exact `base^exp` as a `u128`, or `None` past 2^128.
pub fn checked_pow_u128(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

/// A residue class `residue mod modulus`, stored in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrtClass {
    residue: u64,
    modulus: u64,
}

impl CrtClass {
    /// Reduces `residue` into `[0, modulus)`. The modulus must be at least 1.
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be at least 1"));
        }
        Ok(CrtClass { residue: residue % modulus, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, v: u64) -> bool {
        v % self.modulus == self.residue
    }
}

/// The unique class modulo `m1 * m2` congruent to both inputs.
pub fn crt_merge(c1: CrtClass, c2: CrtClass) -> Result<CrtClass> {
    let (m1, m2) = (c1.modulus, c2.modulus);
    if gcd(m1, m2) != 1 {
        return Err(Error::NonCoprimeModuli { m1, m2 });
    }
    let modulus = m1.checked_mul(m2).ok_or(Error::Overflow)?;
    if m2 == 1 {
        return CrtClass::new(c1.residue, modulus);
    }
    // r = r1 + m1 * t, with t = (r2 - r1) * m1^{-1} mod m2.
    let inv = mod_inverse(m1 % m2, m2).ok_or(Error::NonCoprimeModuli { m1, m2 })?;
    let diff = (c2.residue as i128 - c1.residue as i128).rem_euclid(m2 as i128) as u64;
    let t = mul_mod(diff, inv, m2);
    let residue = (c1.residue as u128 + m1 as u128 * t as u128) % modulus as u128;
    CrtClass::new(residue as u64, modulus)
}

/// Distinct prime factors of `n` in increasing order, by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3] {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
    }
    // 6k ± 1 wheel
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        for p in [d, d + 2] {
            if n % p == 0 {
                out.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
        }
        d += 6;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler's totient via the product formula over distinct prime factors.
pub fn totient(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    distinct_prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// The integers in `[1, n]` coprime to `n`, ascending.
pub fn coprimes_of(n: u64) -> Vec<u64> {
    (1..=n).filter(|&a| gcd(a, n) == 1).collect()
}

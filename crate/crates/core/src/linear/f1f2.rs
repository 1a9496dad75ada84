use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{coprimes_of, gcd, mod_inverse, mul_mod, totient};
use crate::error::{Error, Result};
use crate::primality::is_prime_u64;

use super::{LinearForm, LinearSystem};

pub const DEFAULT_WIDTH: u64 = 12;
/// Residue masks are `u64`, so no prime above this can be tracked.
pub const MAX_WIDTH: u64 = 64;

/// `{a_i x + b_i}` with `b_i` the i-th residue coprime to n.
pub fn f1_system(perm: &[u64], n: u64) -> Result<LinearSystem> {
    build(perm, n, 1)
}

/// `{a_i n x + b_i}`.
pub fn f2_system(perm: &[u64], n: u64) -> Result<LinearSystem> {
    build(perm, n, n)
}

fn build(perm: &[u64], n: u64, scale: u64) -> Result<LinearSystem> {
    let b = coprimes_of(n);
    if perm.len() != b.len() {
        return Err(Error::InvalidInput("permutation length must equal phi(n)"));
    }
    let forms = perm
        .iter()
        .zip(&b)
        .map(|(&a, &b)| Ok(LinearForm { a: a.checked_mul(scale).ok_or(Error::Overflow)?, b }))
        .collect::<Result<Vec<_>>>()?;
    LinearSystem::new(forms)
}

/// The lexicographically first permutation `(a_1, ..., a_phi)` of
/// `1..=phi(n)` making both [`f1_system`] and [`f2_system`] admissible, or
/// `None` when none exists.
///
/// Backtracking keeps, per prime `p <= phi(n)`, the set of residues already
/// killed by the chosen forms of each system and prunes as soon as one fills.
pub fn f1f2_search(n: u64, width: u64) -> Result<Option<Vec<u64>>> {
    if n < 2 {
        return Err(Error::InvalidInput("n must be at least 2"));
    }
    let phi = totient(n);
    if phi > width || phi > MAX_WIDTH {
        return Err(Error::WidthExceeded { phi, width: width.min(MAX_WIDTH) });
    }
    let b = coprimes_of(n);
    let primes: Vec<u64> = (2..=phi).filter(|&p| is_prime_u64(p)).collect();
    let mut search = Search {
        n,
        b,
        primes,
        used: vec![false; phi as usize + 1],
        perm: Vec::with_capacity(phi as usize),
    };
    let masks = vec![(0u64, 0u64); search.primes.len()];
    Ok(search.descend(&masks).then_some(search.perm))
}

struct Search {
    n: u64,
    b: Vec<u64>,
    primes: Vec<u64>,
    used: Vec<bool>,
    perm: Vec<u64>,
}

/// The residue of x killed mod p by `a x + b`, if any.
fn killed(a: u64, b: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let inv = mod_inverse(a, p)?;
    Some(mul_mod((p - b % p) % p, inv, p))
}

impl Search {
    fn descend(&mut self, masks: &[(u64, u64)]) -> bool {
        let i = self.perm.len();
        if i == self.b.len() {
            return true;
        }
        let bi = self.b[i];
        let mut next = masks.to_vec();
        for v in 1..self.used.len() as u64 {
            // b_i is coprime to n, so gcd(v n, b_i) = gcd(v, b_i)
            if self.used[v as usize] || gcd(v, bi) != 1 {
                continue;
            }
            let mut ok = true;
            for (slot, &p) in self.primes.iter().enumerate() {
                let full = (1u64 << p) - 1;
                let (mut m1, mut m2) = masks[slot];
                if let Some(r) = killed(v, bi, p) {
                    m1 |= 1 << r;
                }
                if let Some(r) = killed(v % p * (self.n % p), bi, p) {
                    m2 |= 1 << r;
                }
                if m1 == full || m2 == full {
                    ok = false;
                    break;
                }
                next[slot] = (m1, m2);
            }
            if !ok {
                continue;
            }
            self.used[v as usize] = true;
            self.perm.push(v);
            if self.descend(&next) {
                return true;
            }
            self.perm.pop();
            self.used[v as usize] = false;
        }
        false
    }
}

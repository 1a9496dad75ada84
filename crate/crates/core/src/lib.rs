//! Exact number-theory machinery for checking least-prime, Goldbach-type and
//! admissibility claims at desk scale.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is a pure function of
//! its inputs plus an immutable [`PrimeTable`]; IO, parallel scheduling and
//! report formats live in the companion `primelab` crate.
//!
//! Module map:
//!
//! - [`sieve`], [`primality`], [`arith`], [`primorial`]: the prime substrate
//!   (segmented sieve, deterministic Miller–Rabin, gcd/CRT, primorials and
//!   guarded log-space comparisons).
//! - [`least_prime`]: least primes in residue classes, `p(k)` scans, least
//!   coprime primes, threshold-constant discovery and the Euclid-style
//!   generator.
//! - [`goldbach`]: distinct-prime decompositions (plain and inside a class)
//!   and the coprime-difference witness searches.
//! - [`linear`]: admissibility of linear forms, the permutation search, the
//!   coprime-residue matrix and the CRT least-prime check.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod error;
pub mod goldbach;
pub mod least_prime;
pub mod linear;
pub mod primality;
pub mod primorial;
pub mod sieve;

pub use arith::{coprimes_of, crt_merge, gcd, totient, CrtClass};
pub use error::{Error, Result};
pub use least_prime::ApClass;
pub use primality::is_prime_u64;
pub use sieve::PrimeTable;

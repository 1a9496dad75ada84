use crate::arith::{crt_merge, gcd, CrtClass};
use crate::error::{Error, Result};
use crate::least_prime::ApClass;
use crate::sieve::PrimeTable;

/// The lexicographically smallest pair of distinct odd primes below `n` that
/// are both coprime to `n`. Always exists for `n > 6`.
pub fn lemma1_witness(table: &PrimeTable, n: u64) -> Result<(u64, u64)> {
    if n <= 6 {
        return Err(Error::InvalidInput("n must exceed 6"));
    }
    let mut it = table.primes_between(3, n - 1).filter(|&p| gcd(p, n) == 1);
    match (it.next(), it.next()) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::NoWitness { n }),
    }
}

/// The two smallest distinct odd primes `p1 < p2 <= kn + l`, coprime to
/// `kn + l`, with `p1 = p2 = l (mod k)` and `p1 = p2 = 2(kn + l) (mod p)`.
///
/// The two congruences are merged by CRT and the merged class is walked.
/// With the unconstrained class, `kn + l` is just `n`.
pub fn lemma7_witness(table: &PrimeTable, class: ApClass, p: u64, n: u64) -> Result<(u64, u64)> {
    if p % 2 == 0 || !table.is_prime(p) {
        return Err(Error::InvalidInput("p must be an odd prime"));
    }
    if gcd(p, class.modulus()) != 1 {
        return Err(Error::InvalidInput("p must be coprime to the class modulus"));
    }
    let value = class.member(n)?;
    if gcd(p, value) != 1 {
        return Err(Error::InvalidInput("p must be coprime to kn + l"));
    }
    let two_v = value.checked_mul(2).ok_or(Error::Overflow)?;
    let merged = crt_merge(class.as_crt(), CrtClass::new(two_v % p, p)?)?;
    let mut found = [0u64; 2];
    let mut count = 0;
    let mut c = merged.residue();
    while c <= value {
        if c % 2 == 1 && gcd(c, value) == 1 && table.is_prime(c) {
            found[count] = c;
            count += 1;
            if count == 2 {
                return Ok((found[0], found[1]));
            }
        }
        c = match c.checked_add(merged.modulus()) {
            Some(v) => v,
            None => break,
        };
    }
    Err(Error::NotFoundWithinBound { bound: value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma1_examples() {
        let t = PrimeTable::new(1000);
        assert_eq!(lemma1_witness(&t, 7).unwrap(), (3, 5));
        assert_eq!(lemma1_witness(&t, 30).unwrap(), (7, 11));
        assert_eq!(lemma1_witness(&t, 8).unwrap(), (3, 5));
        assert!(lemma1_witness(&t, 6).is_err());
    }

    #[test]
    fn lemma1_holds_to_a_million() {
        let t = PrimeTable::new(1_000_000);
        for n in 7..=1_000_000u64 {
            let (p, q) = lemma1_witness(&t, n).unwrap();
            assert!(p < q && q < n && gcd(p * q, n) == 1);
        }
    }

    #[test]
    fn lemma7_examples() {
        let t = PrimeTable::new(1000);
        assert_eq!(lemma7_witness(&t, ApClass::Unconstrained, 3, 50).unwrap(), (7, 13));
        let c43 = ApClass::new(4, 3).unwrap();
        assert_eq!(lemma7_witness(&t, c43, 3, 25).unwrap(), (11, 23));
        assert_eq!(
            lemma7_witness(&t, c43, 3, 1),
            Err(Error::NotFoundWithinBound { bound: 7 })
        );
        assert!(lemma7_witness(&t, c43, 9, 25).is_err());
        assert!(lemma7_witness(&t, c43, 2, 25).is_err());
        assert!(lemma7_witness(&t, ApClass::new(6, 5).unwrap(), 3, 25).is_err());
        // gcd(3, 4*2 + 3 + ...) : 4n + 3 = 15 at n = 3
        assert!(lemma7_witness(&t, c43, 3, 3).is_err());
    }

    #[test]
    fn lemma7_against_direct_filter() {
        let t = PrimeTable::new(10_000);
        let c = ApClass::new(5, 2).unwrap();
        for n in 1..300u64 {
            let v = 5 * n + 2;
            for p in [3u64, 7, 11] {
                if gcd(p, v) != 1 {
                    continue;
                }
                let want: alloc::vec::Vec<u64> = (3..=v)
                    .filter(|&x| x % 2 == 1 && t.is_prime(x) && x % 5 == 2)
                    .filter(|&x| gcd(x, v) == 1 && x % p == (2 * v) % p)
                    .take(2)
                    .collect();
                match lemma7_witness(&t, c, p, n) {
                    Ok((a, b)) => assert_eq!(alloc::vec![a, b], want),
                    Err(_) => assert!(want.len() < 2),
                }
            }
        }
    }
}

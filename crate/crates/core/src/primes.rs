//! Primality, the quadratic character of 5, prime-index sums, and the primes
//! that feed the `{2p, 4p}` family.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibcore::{sum_fib_mod, Integer};

/// Witness set that makes Miller-Rabin deterministic below `2^64`.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Deterministic primality test for any `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// [`is_prime`] for an arbitrary-precision argument; only `0 <= n < 2^64`
/// is accepted.
pub fn is_prime_big(n: &Integer) -> Result<bool> {
    n.to_u64()
        .map(is_prime)
        .ok_or_else(|| Error::OutOfRange(n.clone()))
}

/// All primes `<= limit`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::Hypothesis {
            p,
            reason: "p must be odd",
        });
    }
    Ok(())
}

/// Legendre symbol `(5/p)` from `p mod 5`: `+1` for `p = ±1`, `-1` for
/// `p = ±2`.
pub fn legendre5(p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    match p % 5 {
        1 | 4 => Ok(1),
        2 | 3 => Ok(-1),
        _ => Err(Error::Hypothesis {
            p,
            reason: "p must differ from 5",
        }),
    }
}

/// Euler's criterion `5^((p-1)/2) mod p`, mapped to `{-1, +1}`.
pub fn euler_criterion5(p: u64) -> Result<i8> {
    legendre5(p)?;
    let r = pow_mod(5, (p - 1) / 2, p);
    Ok(if r == 1 { 1 } else { -1 })
}

/// `S(p) mod p` together with the quadratic character of 5.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    pub p: u64,
    pub sp_mod_p: u64,
    /// `(5/p)`, recorded as `0` at `p = 5`.
    pub character5: i8,
    pub divisible: bool,
}

pub fn sp_residue(p: u64) -> Result<ResidueReport> {
    require_odd_prime(p)?;
    let residue = sum_fib_mod(&BigInt::from(p), &BigInt::from(p))?
        .to_u64()
        .expect("residue below a u64 modulus");
    let character5 = if p == 5 { 0 } else { legendre5(p)? };
    Ok(ResidueReport {
        p,
        sp_mod_p: residue,
        character5,
        divisible: residue == 0,
    })
}

/// An odd prime with `p = 2 (mod 3)` and `p = ±2 (mod 5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct QualifyingPrime {
    p: u64,
    residue_mod3: u64,
    residue_mod5: u64,
}

impl QualifyingPrime {
    pub fn new(p: u64) -> Result<Self> {
        require_odd_prime(p)?;
        if p % 3 != 2 {
            return Err(Error::Hypothesis {
                p,
                reason: "p must be 2 mod 3",
            });
        }
        if !matches!(p % 5, 2 | 3) {
            return Err(Error::Hypothesis {
                p,
                reason: "p must be 2 or 3 mod 5",
            });
        }
        Ok(Self {
            p,
            residue_mod3: p % 3,
            residue_mod5: p % 5,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue_mod3(&self) -> u64 {
        self.residue_mod3
    }

    pub fn residue_mod5(&self) -> u64 {
        self.residue_mod5
    }
}

/// Every qualifying prime `<= limit`, ascending.
///
/// ```
/// use fibsum::primes::qualifying_primes;
///
/// let ps: Vec<u64> = qualifying_primes(60).iter().map(|q| q.p()).collect();
/// assert_eq!(ps, [17, 23, 47, 53]);
/// ```
pub fn qualifying_primes(limit: u64) -> Vec<QualifyingPrime> {
    primes_up_to(limit)
        .into_iter()
        .filter_map(|p| QualifyingPrime::new(p).ok())
        .collect()
}

/// The first `count` qualifying primes.
pub fn first_qualifying_primes(count: usize) -> Vec<QualifyingPrime> {
    let mut limit = 64;
    loop {
        let mut found = qualifying_primes(limit);
        if found.len() >= count {
            found.truncate(count);
            return found;
        }
        limit *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(17));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(121393));
        assert_eq!(121393, 233 * 521);
        assert!(is_prime(18446744073709551557)); // largest u64 prime
        assert!(!is_prime(3215031751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn big_primality_range() {
        assert_eq!(is_prime_big(&BigInt::from(97)), Ok(true));
        let too_big = BigInt::from(u64::MAX) + 1;
        assert!(is_prime_big(&too_big).is_err());
        assert!(is_prime_big(&BigInt::from(-7)).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = primes_up_to(10_000);
        let direct: Vec<u64> = (0..=10_000).filter(|&n| trial_division(n)).collect();
        assert_eq!(sieved, direct);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre5(11), Ok(1));
        assert_eq!(legendre5(7), Ok(-1));
        assert_eq!(legendre5(19), Ok(1));
        assert_eq!(pow_mod(5, 9, 19), 1);
        assert!(legendre5(5).is_err());
        assert!(legendre5(2).is_err());
        assert!(legendre5(21).is_err());
    }

    #[test]
    fn legendre_table_matches_euler() {
        for p in primes_up_to(10_000)
            .into_iter()
            .filter(|&p| p != 2 && p != 5)
        {
            assert_eq!(legendre5(p), euler_criterion5(p), "p = {p}");
        }
    }

    /// `S(p) mod p` by summing the recurrence mod p, no closed form.
    fn summed_residue(p: u64) -> u64 {
        let (mut a, mut b, mut s) = (0u64, 1u64, 0u64);
        for _ in 0..p {
            let c = (a + b) % p;
            a = b;
            b = c;
            s = (s + a) % p;
        }
        s
    }

    #[test]
    fn residue_examples() {
        assert_eq!(sp_residue(3).unwrap().sp_mod_p, 1);
        let r5 = sp_residue(5).unwrap();
        assert_eq!((r5.sp_mod_p, r5.character5), (2, 0));
        assert_eq!(sp_residue(7).unwrap().sp_mod_p, 5);
        assert_eq!(sp_residue(11).unwrap().sp_mod_p, 1);
        assert!(sp_residue(2).is_err());
        assert!(sp_residue(9).is_err());
    }

    #[test]
    fn residue_classification() {
        for p in primes_up_to(100).into_iter().filter(|&p| p > 5) {
            let r = sp_residue(p).unwrap();
            assert_eq!(r.sp_mod_p, summed_residue(p));
            let expected = if r.character5 == 1 { 1 } else { p - 2 };
            assert_eq!(r.sp_mod_p, expected, "p = {p}");
        }
        for p in primes_up_to(10_000).into_iter().filter(|&p| p > 5) {
            let r = sp_residue(p).unwrap();
            assert!(!r.divisible);
            let expected = if r.character5 == 1 { 1 } else { p - 2 };
            assert_eq!(r.sp_mod_p, expected, "p = {p}");
        }
    }

    #[test]
    fn qualifying_examples() {
        let ps = |l| -> Vec<u64> { qualifying_primes(l).iter().map(|q| q.p()).collect() };
        assert_eq!(ps(60), vec![17, 23, 47, 53]);
        assert!(ps(16).is_empty());
        assert!(ps(2).is_empty());
        assert!(QualifyingPrime::new(13).is_err());
        assert!(QualifyingPrime::new(11).is_err());
        assert!(QualifyingPrime::new(2).is_err());
        assert!(QualifyingPrime::new(35).is_err());
        assert_eq!(first_qualifying_primes(4), qualifying_primes(60));
    }

    #[test]
    fn qualifying_matches_residue_filter() {
        let direct: Vec<u64> = (3..=100_000u64)
            .filter(|&p| trial_division(p) && p % 3 == 2 && (p % 5 == 2 || p % 5 == 3))
            .collect();
        let listed = qualifying_primes(100_000);
        assert_eq!(listed.iter().map(|q| q.p()).collect::<Vec<_>>(), direct);
        for q in &listed {
            assert!(q.p() % 2 == 1 && q.residue_mod3() == 2);
            assert!(matches!(q.residue_mod5(), 2 | 3));
            // the two congruences collapse to p = 2 or 8 (mod 15)
            assert!(matches!(q.p() % 15, 2 | 8));
        }
    }

    proptest! {
        #[test]
        fn miller_rabin_matches_trial_division(n in 0u64..2_000_000) {
            prop_assert_eq!(is_prime(n), trial_division(n));
        }
    }
}

//! Checkers for the Fibonacci identities used in the divisibility arguments.
//!
//! Each checker evaluates both sides independently with exact arithmetic and
//! returns an [`IdentityVerdict`] carrying the two values, so a failure can be
//! diagnosed from the verdict alone.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibcore::{fib, lucas, sum_fib, Integer};
use crate::json::bigint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub holds: bool,
    #[serde(serialize_with = "bigint")]
    pub lhs: Integer,
    #[serde(serialize_with = "bigint")]
    pub rhs: Integer,
    /// Identity name with the instantiated indices.
    pub context: String,
}

impl IdentityVerdict {
    pub fn new(context: impl Into<String>, lhs: Integer, rhs: Integer) -> Self {
        Self {
            holds: lhs == rhs,
            lhs,
            rhs,
            context: context.into(),
        }
    }
}

impl fmt::Display for IdentityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.holds { "==" } else { "!=" };
        write!(f, "{}: {} {} {}", self.context, self.lhs, rel, self.rhs)
    }
}

fn at_least(what: &'static str, min: u64, got: u64) -> Result<()> {
    if got < min {
        return Err(Error::BelowMinimum {
            what,
            min: min as i64,
            got: BigInt::from(got),
        });
    }
    Ok(())
}

/// Cassini: `F(n+1)^2 - F(n) F(n+2) = (-1)^n`.
pub fn check_cassini(n: i64) -> IdentityVerdict {
    let (a, b, c) = (fib(n), fib(n + 1), fib(n + 2));
    let lhs = &b * &b - a * c;
    let rhs = if n.is_even() {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    IdentityVerdict::new(format!("cassini(n={n})"), lhs, rhs)
}

/// Addition rule: `F(2n+1) = F(n)^2 + F(n+1)^2`.
pub fn check_addition(n: u64) -> IdentityVerdict {
    let n = n as i64;
    let (a, b) = (fib(n), fib(n + 1));
    IdentityVerdict::new(
        format!("addition(n={n})"),
        fib(2 * n + 1),
        &a * &a + &b * &b,
    )
}

/// Difference identity for `a > b >= 0`, `a = b (mod 2)`:
///
/// ```text
/// F(a) - F(b) = F(u) L(v)   if a = b     (mod 4)
///             = F(v) L(u)   if a = b + 2 (mod 4)
/// ```
///
/// with `u = (a - b) / 2`, `v = (a + b) / 2`.
pub fn check_luca_difference(a: i64, b: i64) -> Result<IdentityVerdict> {
    if a <= b || b < 0 || (a - b).is_odd() {
        return Err(Error::LucaArguments { a, b });
    }
    let (u, v) = ((a - b) / 2, (a + b) / 2);
    let lhs = fib(a) - fib(b);
    let (rhs, case) = if (a - b) % 4 == 0 {
        (fib(u) * lucas(v), "F_u L_v")
    } else {
        (fib(v) * lucas(u), "F_v L_u")
    };
    Ok(IdentityVerdict::new(
        format!("luca-difference(a={a}, b={b}, u={u}, v={v}, {case})"),
        lhs,
        rhs,
    ))
}

/// `F(1) + ... + F(n)` by direct summation against `F(n+2) - 1`.
pub fn check_sum_identity(n: u64) -> IdentityVerdict {
    let mut total = BigInt::zero();
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
        total += &a;
    }
    IdentityVerdict::new(format!("sum(n={n})"), total, sum_fib(n))
}

/// Strong divisibility: `gcd(F(a), F(b)) = F(gcd(a, b))`.
pub fn check_strong_divisibility(a: u64, b: u64) -> Result<IdentityVerdict> {
    at_least("a", 1, a)?;
    at_least("b", 1, b)?;
    let lhs = fib(a as i64).gcd(&fib(b as i64));
    let rhs = fib(a.gcd(&b) as i64);
    Ok(IdentityVerdict::new(
        format!("strong-divisibility(a={a}, b={b})"),
        lhs,
        rhs,
    ))
}

/// Parity rule: `F(k)` is odd exactly when `3` does not divide `k`.
///
/// The verdict compares the two sides as `0`/`1` flags: `lhs` is
/// `F(k) mod 2` and `rhs` is `1` when `k mod 3 != 0`.
pub fn check_parity_rule(k: u64) -> Result<IdentityVerdict> {
    at_least("k", 1, k)?;
    let lhs = fib(k as i64) % 2;
    let rhs = BigInt::from(u8::from(!k.is_multiple_of(3)));
    Ok(IdentityVerdict::new(format!("parity(k={k})"), lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn cassini_examples() {
        let v = check_cassini(2);
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (big(1), big(1)));
        assert!(v.holds);
        let v = check_cassini(3);
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (big(-1), big(-1)));
        assert!(check_cassini(100).holds);
    }

    #[test]
    fn addition_examples() {
        let v = check_addition(0);
        assert_eq!((v.lhs, v.rhs), (big(1), big(1)));
        let v = check_addition(5);
        assert_eq!(v.lhs, big(89));
        assert!(v.holds);
        assert!(check_addition(300).holds);
    }

    #[test]
    fn luca_examples() {
        let v = check_luca_difference(6, 2).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (big(7), big(7)));
        assert!(v.context.contains("F_u L_v"));

        let v = check_luca_difference(8, 2).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (big(20), big(20)));
        assert!(v.context.contains("F_v L_u"));

        let v = check_luca_difference(2, 0).unwrap();
        assert_eq!((v.lhs, v.rhs), (big(1), big(1)));
    }

    #[test]
    fn luca_rejects_bad_arguments() {
        assert!(check_luca_difference(5, 2).is_err());
        assert!(check_luca_difference(2, 6).is_err());
        assert!(check_luca_difference(4, 4).is_err());
        assert!(check_luca_difference(2, -2).is_err());
    }

    #[test]
    fn sum_examples() {
        let v = check_sum_identity(1);
        assert_eq!((v.lhs, v.rhs), (big(1), big(1)));
        let v = check_sum_identity(0);
        assert_eq!((v.lhs, v.rhs), (big(0), big(0)));
        let v = check_sum_identity(24);
        assert_eq!(v.lhs, big(121392));
        assert!(v.holds);
    }

    #[test]
    fn strong_divisibility_examples() {
        let v = check_strong_divisibility(10, 15).unwrap();
        assert_eq!((v.lhs, v.rhs), (big(5), big(5)));
        assert!(check_strong_divisibility(7, 7).unwrap().holds);
        let v = check_strong_divisibility(12, 18).unwrap();
        assert_eq!((v.lhs, v.rhs), (big(8), big(8)));
        assert!(check_strong_divisibility(0, 3).is_err());
    }

    #[test]
    fn parity_examples() {
        assert!(check_parity_rule(3).unwrap().holds);
        let v = check_parity_rule(34).unwrap();
        assert_eq!(v.lhs, big(1));
        assert!(v.holds);
        let v = check_parity_rule(60).unwrap();
        assert_eq!(v.lhs, big(0));
        assert!(v.holds);
        assert!(check_parity_rule(0).is_err());
    }

    #[test]
    fn verdict_reports_mismatch() {
        let v = IdentityVerdict::new("x", big(1), big(2));
        assert!(!v.holds);
        assert_eq!(v.to_string(), "x: 1 != 2");
    }

    #[test]
    fn sweeps() {
        for n in -50..=500 {
            assert!(check_cassini(n).holds, "{}", check_cassini(n));
        }
        for n in 0..=500 {
            assert!(check_addition(n).holds);
        }
        for a in 0..=200i64 {
            for b in (a % 2..a).step_by(2) {
                let v = check_luca_difference(a, b).unwrap();
                assert!(v.holds, "{v}");
            }
        }
        for a in 1..=200 {
            for b in 1..=200 {
                assert!(check_strong_divisibility(a, b).unwrap().holds);
            }
        }
        for k in 1..=3000 {
            assert!(check_parity_rule(k).unwrap().holds);
        }
    }
}

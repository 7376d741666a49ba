//! Exact and modular Fibonacci and Lucas numbers.
//!
//! Everything here runs on the fast-doubling identities
//!
//! ```text
//! F(2j)   = F(j) * (2 F(j+1) - F(j))
//! F(2j+1) = F(j)^2 + F(j+1)^2
//! ```
//!
//! walking the bits of the index from the most significant end. The modular
//! kernel accepts arbitrary-precision indices, which is what makes
//! `F(F(k) + 2) mod F(k)` reachable for `k` in the thousands.
//!
//! Indexing follows `F(0) = 0`, `F(1) = F(2) = 1`, extended to negative
//! indices by `F(-n) = (-1)^(n+1) F(n)`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer used for every value and index.
pub type Integer = BigInt;

/// Consecutive Fibonacci residues `(F(n) mod m, F(n+1) mod m)`.
///
/// Both residues are canonical, in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibPairMod {
    modulus: BigUint,
    current: BigUint,
    next: BigUint,
}

impl FibPairMod {
    fn start(modulus: BigUint) -> Self {
        let next = BigUint::one() % &modulus;
        Self {
            modulus,
            current: BigUint::zero(),
            next,
        }
    }

    /// Index `n` becomes `2n`.
    fn double(&mut self) {
        let m = &self.modulus;
        let a = &self.current;
        let b = &self.next;
        // 2b - a, kept non-negative before reduction
        let twice_b_minus_a = ((b << 1u32) + m - a) % m;
        let even = (a * twice_b_minus_a) % m;
        let odd = (a * a + b * b) % m;
        self.current = even;
        self.next = odd;
    }

    /// Index `n` becomes `n + 1`.
    fn step(&mut self) {
        let sum = (&self.current + &self.next) % &self.modulus;
        self.current = std::mem::replace(&mut self.next, sum);
    }

    pub fn modulus(&self) -> Integer {
        BigInt::from(self.modulus.clone())
    }

    /// `F(n) mod m`.
    pub fn current(&self) -> Integer {
        BigInt::from(self.current.clone())
    }

    /// `F(n+1) mod m`.
    pub fn next(&self) -> Integer {
        BigInt::from(self.next.clone())
    }

    pub(crate) fn current_ref(&self) -> &BigUint {
        &self.current
    }

    pub(crate) fn next_ref(&self) -> &BigUint {
        &self.next
    }
}

pub(crate) fn to_modulus(m: &BigInt) -> Result<BigUint> {
    match m.to_biguint() {
        Some(u) if !u.is_zero() => Ok(u),
        _ => Err(Error::NonPositiveModulus(m.clone())),
    }
}

pub(crate) fn to_index(n: &BigInt) -> Result<BigUint> {
    n.to_biguint()
        .ok_or_else(|| Error::NegativeIndex(n.clone()))
}

/// Fast doubling over an unsigned modulus, index consumed MSB first.
pub(crate) fn pair_mod_unsigned(n: &BigUint, m: &BigUint) -> FibPairMod {
    let mut pair = FibPairMod::start(m.clone());
    if m.is_one() {
        return pair;
    }
    for i in (0..n.bits()).rev() {
        pair.double();
        if n.bit(i) {
            pair.step();
        }
    }
    pair
}

/// `(F(n) mod m, F(n+1) mod m)` for `n >= 0`, `m >= 1`.
///
/// The index may be arbitrarily large; the cost is one doubling step per bit
/// of `n`.
///
/// ```
/// use fibsum::fibcore::fib_pair_mod;
/// use num_bigint::BigInt;
///
/// let pair = fib_pair_mod(&BigInt::from(10), &BigInt::from(1000)).unwrap();
/// assert_eq!(pair.current(), BigInt::from(55));
/// assert_eq!(pair.next(), BigInt::from(89));
/// ```
pub fn fib_pair_mod(n: &Integer, m: &Integer) -> Result<FibPairMod> {
    let m = to_modulus(m)?;
    let n = to_index(n)?;
    Ok(pair_mod_unsigned(&n, &m))
}

/// `F(n) mod m`, canonical in `[0, m)`.
pub fn fib_mod(n: &Integer, m: &Integer) -> Result<Integer> {
    fib_pair_mod(n, m).map(|pair| pair.current())
}

/// `(F(n), F(n+1))` exactly, by fast doubling.
pub(crate) fn fib_pair_unsigned(n: u64) -> (BigUint, BigUint) {
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for i in (0..u64::BITS - n.leading_zeros()).rev() {
        let c = &a * ((&b << 1u32) - &a);
        let d = &a * &a + &b * &b;
        if (n >> i) & 1 == 1 {
            b = c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

/// Signed result of `(-1)^(k+1) * value`, i.e. the sign rule for `F(-k)`.
fn negate_if_even(k: u64, value: BigUint) -> BigInt {
    let sign = if k.is_even() { Sign::Minus } else { Sign::Plus };
    BigInt::from_biguint(sign, value)
}

/// The Fibonacci number `F(n)` for any integer index.
///
/// ```
/// use fibsum::fibcore::fib;
/// use num_bigint::BigInt;
///
/// assert_eq!(fib(10), BigInt::from(55));
/// assert_eq!(fib(-2), BigInt::from(-1));
/// ```
pub fn fib(n: i64) -> Integer {
    let k = n.unsigned_abs();
    let (value, _) = fib_pair_unsigned(k);
    if n >= 0 {
        BigInt::from(value)
    } else {
        negate_if_even(k, value)
    }
}

/// The Lucas number `L(n) = F(n-1) + F(n+1)`.
pub fn lucas(n: i64) -> Integer {
    let k = n.unsigned_abs();
    let (f, g) = fib_pair_unsigned(k);
    // L(k) = 2 F(k+1) - F(k); L(-k) = (-1)^k L(k)
    let value = BigInt::from((g << 1u32) - f);
    if n < 0 && k.is_odd() {
        -value
    } else {
        value
    }
}

/// `S(n) = F(1) + ... + F(n) = F(n+2) - 1`.
pub fn sum_fib(n: u64) -> Integer {
    let (f, g) = fib_pair_unsigned(n);
    BigInt::from(f + g) - 1
}

/// `S(n) mod m = (F(n+2) - 1) mod m`, canonical in `[0, m)`.
pub fn sum_fib_mod(n: &Integer, m: &Integer) -> Result<Integer> {
    let modulus = to_modulus(m)?;
    let index = to_index(n)? + 2u32;
    let pair = pair_mod_unsigned(&index, &modulus);
    Ok(BigInt::from((pair.current + &modulus - 1u32) % &modulus))
}

/// Reduce a signed value into `[0, m)`.
pub fn canonical_residue(value: &Integer, m: &Integer) -> Result<Integer> {
    if !m.is_positive() {
        return Err(Error::NonPositiveModulus(m.clone()));
    }
    Ok(value.mod_floor(m))
}

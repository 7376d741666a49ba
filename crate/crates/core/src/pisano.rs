//! Pisano periods and the period-divisibility facts built on them.
//!
//! `π(m)` is the least `t >= 1` with `F(t) = 0` and `F(t+1) = 1 (mod m)`; any
//! `t` with both congruences is a multiple of `π(m)`. Two ways of finding it
//! are provided: stepping the residue pair until it returns to `(0, 1)`, and,
//! for moduli `F(n)` with `n` even, testing the divisors of `2n` in increasing
//! order.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibcore::{fib, pair_mod_unsigned, to_index, to_modulus, Integer};
use crate::json::bigint;
use crate::primes::is_prime;

/// Largest modulus accepted by the iterative search unless overridden.
pub const DEFAULT_SEARCH_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PisanoMethod {
    IterativeSearch,
    DivisorRefinement,
}

impl PisanoMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::IterativeSearch => "iterative-search",
            Self::DivisorRefinement => "divisor-refinement",
        }
    }
}

impl fmt::Display for PisanoMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PisanoMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iterative-search" => Ok(Self::IterativeSearch),
            "divisor-refinement" => Ok(Self::DivisorRefinement),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PisanoRecord {
    #[serde(serialize_with = "bigint")]
    pub modulus: Integer,
    pub period: u64,
    pub method: PisanoMethod,
}

/// True iff `π(m)` divides `t`, i.e. `F(t) = 0` and `F(t+1) = 1 (mod m)`.
pub fn is_period_multiple(m: &Integer, t: &Integer) -> Result<bool> {
    let modulus = to_modulus(m)?;
    if t.is_zero() || to_index(t).is_err() {
        return Err(Error::BelowMinimum {
            what: "t",
            min: 1,
            got: t.clone(),
        });
    }
    let pair = pair_mod_unsigned(&to_index(t)?, &modulus);
    let one = BigInt::one() % m;
    Ok(pair.current_ref().is_zero() && BigInt::from(pair.next_ref().clone()) == one)
}

/// `π(m)` by iterative search, for `1 <= m <= DEFAULT_SEARCH_BOUND`.
///
/// ```
/// use fibsum::pisano::pisano;
///
/// assert_eq!(pisano(4).unwrap().period, 6);
/// assert_eq!(pisano(10).unwrap().period, 60);
/// ```
pub fn pisano(m: u64) -> Result<PisanoRecord> {
    pisano_bounded(m, DEFAULT_SEARCH_BOUND)
}

/// As [`pisano`] with an explicit cap on the modulus.
///
/// The search itself gives up after `6m` steps, the classical upper bound
/// on `π(m)`.
pub fn pisano_bounded(m: u64, max_modulus: u64) -> Result<PisanoRecord> {
    if m == 0 {
        return Err(Error::NonPositiveModulus(BigInt::zero()));
    }
    if m > max_modulus {
        return Err(Error::OutOfRange(BigInt::from(m)));
    }
    let limit = m.saturating_mul(6);
    let one = 1 % m;
    let (mut a, mut b) = (0u64, one);
    for t in 1..=limit {
        let c = (a + b) % m;
        a = b;
        b = c;
        if a == 0 && b == one {
            return Ok(PisanoRecord {
                modulus: BigInt::from(m),
                period: t,
                method: PisanoMethod::IterativeSearch,
            });
        }
    }
    Err(Error::PeriodBoundExceeded {
        modulus: BigInt::from(m),
        bound: limit,
    })
}

/// Divisors of `n` in increasing order, by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn require_even(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::BelowMinimum {
            what: "n",
            min: 2,
            got: BigInt::from(n),
        });
    }
    if !n.is_multiple_of(2) {
        return Err(Error::OddIndex(BigInt::from(n)));
    }
    Ok(())
}

/// `π(F(n))` for even `n > 1`, found among the divisors of `2n`.
pub fn pisano_fib_even(n: u64) -> Result<PisanoRecord> {
    require_even(n)?;
    let modulus = fib(n as i64);
    for d in divisors(2 * n) {
        if is_period_multiple(&modulus, &BigInt::from(d))? {
            return Ok(PisanoRecord {
                modulus,
                period: d,
                method: PisanoMethod::DivisorRefinement,
            });
        }
    }
    // unreachable while π(F(n)) | 2n holds; reported rather than assumed
    Err(Error::PeriodBoundExceeded {
        modulus: fib(n as i64),
        bound: 2 * n,
    })
}

/// `π(F(n))` divides `2n` for even `n > 1`.
pub fn check_prop_pisano(n: u64) -> Result<bool> {
    require_even(n)?;
    is_period_multiple(&fib(n as i64), &BigInt::from(2 * n))
}

/// `π(p)` divides `2(p + 1)` for primes `p = ±2 (mod 5)`.
pub fn check_wall(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !matches!(p % 5, 2 | 3) {
        return Err(Error::Hypothesis {
            p,
            reason: "p must be 2 or 3 mod 5",
        });
    }
    let period = pisano(p)?.period;
    Ok((2 * (p + 1)).is_multiple_of(period))
}

/// `π(4p) = lcm(6, π(p))` for odd primes `p`.
pub fn check_lcm_rule(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::Hypothesis {
            p,
            reason: "p must be odd",
        });
    }
    let combined = pisano(4 * p)?.period;
    let base = pisano(p)?.period;
    Ok(combined == 6u64.lcm(&base))
}

/// Exact pair `(π(F(M)) / F(M), 2M / F(M))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioBound {
    pub observed: BigRational,
    pub bound: BigRational,
}

impl RatioBound {
    pub fn holds(&self) -> bool {
        self.observed <= self.bound
    }
}

pub fn ratio_bound(m: u64) -> Result<RatioBound> {
    let record = pisano_fib_even(m)?;
    let denom = record.modulus.clone();
    Ok(RatioBound {
        observed: BigRational::new(BigInt::from(record.period), denom.clone()),
        bound: BigRational::new(BigInt::from(2 * m), denom),
    })
}

/// On-disk memo of computed periods, one `modulus period method` per line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PisanoCache {
    records: BTreeMap<Integer, PisanoRecord>,
    dirty: bool,
}

impl PisanoCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Load from `path`; a missing file yields an empty cache.
    pub fn load(path: &Path) -> io::Result<Self> {
        match std::fs::read_to_string(path) {
            Ok(text) => Self::parse(&text),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(e),
        }
    }

    /// Parse cache text. Every record is re-checked with
    /// [`is_period_multiple`] before it is accepted.
    pub fn parse(text: &str) -> io::Result<Self> {
        let invalid = |line: usize, msg: String| {
            io::Error::new(io::ErrorKind::InvalidData, format!("line {line}: {msg}"))
        };
        let mut cache = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [modulus, period, method] = fields[..] else {
                return Err(invalid(i + 1, "expected 3 fields".into()));
            };
            let modulus: Integer = modulus
                .parse()
                .map_err(|e| invalid(i + 1, format!("{e}")))?;
            let period: u64 = period.parse().map_err(|e| invalid(i + 1, format!("{e}")))?;
            let method: PisanoMethod = method.parse().map_err(|e| invalid(i + 1, e))?;
            let valid = period >= 1
                && is_period_multiple(&modulus, &BigInt::from(period))
                    .map_err(|e| invalid(i + 1, e.to_string()))?;
            if !valid {
                return Err(invalid(
                    i + 1,
                    format!("{period} is not a period of {modulus}"),
                ));
            }
            cache.records.insert(
                modulus.clone(),
                PisanoRecord {
                    modulus,
                    period,
                    method,
                },
            );
        }
        Ok(cache)
    }

    pub fn get(&self, m: &Integer) -> Option<&PisanoRecord> {
        self.records.get(m)
    }

    pub fn insert(&mut self, record: PisanoRecord) {
        self.dirty |= self.records.get(&record.modulus) != Some(&record);
        self.records.insert(record.modulus.clone(), record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// True if records were added since loading.
    pub fn is_dirty(&self) -> bool {
        self.dirty
    }

    pub fn get_or_compute(&mut self, m: u64) -> Result<PisanoRecord> {
        if let Some(r) = self.get(&BigInt::from(m)) {
            return Ok(r.clone());
        }
        let record = pisano(m)?;
        self.insert(record.clone());
        Ok(record)
    }

    pub fn to_text(&self) -> String {
        self.records
            .values()
            .map(|r| format!("{} {} {}\n", r.modulus, r.period, r.method))
            .collect()
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_text())
    }
}

//! Self-summable Fibonacci numbers.
//!
//! `k` is self-summable when `F(k)` divides `F(1) + ... + F(F(k))`. Since that
//! sum is `F(F(k) + 2) - 1`, the test is `F(F(k) + 2) = 1 (mod F(k))`. The
//! index `F(k) + 2` is astronomically large, so it is either fed to the
//! fast-doubling kernel directly or, for even `k`, first reduced modulo `2k`,
//! which is a multiple of `π(F(k))`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibcore::{fib, fib_mod, sum_fib_mod};
use crate::primes::QualifyingPrime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Index reduced modulo `2k` before evaluation; even `k` only.
    PeriodReduced,
    /// Index `F(k) + 2` evaluated as is.
    DirectBigIndex,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PeriodReduced => "period-reduced",
            Self::DirectBigIndex => "direct-big-index",
        }
    }

    fn default_for(k: u64) -> Self {
        if k.is_multiple_of(2) {
            Self::PeriodReduced
        } else {
            Self::DirectBigIndex
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfSummableRecord {
    pub k: u64,
    pub fib_k_odd: bool,
    pub verdict: bool,
    pub strategy: Strategy,
}

fn require_positive(what: &'static str, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::BelowMinimum {
            what,
            min: 1,
            got: BigInt::zero(),
        });
    }
    Ok(())
}

/// Test `F(k) | S(F(k))`, choosing the reduced index for even `k`.
///
/// ```
/// use fibsum::selfsum::is_self_summable;
///
/// assert!(is_self_summable(34).unwrap().verdict);
/// assert!(!is_self_summable(4).unwrap().verdict);
/// ```
pub fn is_self_summable(k: u64) -> Result<SelfSummableRecord> {
    is_self_summable_with(k, Strategy::default_for(k))
}

/// Test `F(k) | S(F(k))` with an explicit strategy.
pub fn is_self_summable_with(k: u64, strategy: Strategy) -> Result<SelfSummableRecord> {
    require_positive("k", k)?;
    if strategy == Strategy::PeriodReduced && k % 2 == 1 {
        return Err(Error::Strategy {
            strategy: strategy.as_str(),
            k,
        });
    }
    let fk = fib(k as i64);
    let fib_k_odd = fk.bit(0);
    let verdict = if fk.is_one() {
        true
    } else {
        let index = match strategy {
            Strategy::PeriodReduced => (&fk + 2u32) % (2 * k),
            Strategy::DirectBigIndex => &fk + 2u32,
        };
        fib_mod(&index, &fk)?.is_one()
    };
    Ok(SelfSummableRecord {
        k,
        fib_k_odd,
        verdict,
        strategy,
    })
}

/// Every self-summable `k <= limit`, ascending.
pub fn scan_self_summable(limit: u64) -> Vec<SelfSummableRecord> {
    (1..=limit)
        .into_par_iter()
        .map(|k| is_self_summable(k).expect("k >= 1"))
        .filter(|r| r.verdict)
        .collect()
}

/// The self-summable `k <= limit` with `F(k)` odd.
pub fn scan_odd_self_summable(limit: u64) -> Vec<SelfSummableRecord> {
    let mut all = scan_self_summable(limit);
    all.retain(|r| r.fib_k_odd);
    all
}

/// Evidence that `n = 2p` or `n = 4p` yields an odd self-summable `F(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub p: QualifyingPrime,
    pub n: u64,
    pub fib_n_odd: bool,
    /// `F(n) mod 2n`.
    pub congruence_residue: u64,
    /// `(F(n) + 2) mod 2n`: any of `1`, `2`, `2n - 1` forces
    /// `F(F(n) + 2) = 1 (mod F(n))`.
    pub reduced_index: u64,
    pub divisibility_holds: bool,
}

impl FamilyCertificate {
    /// `F(n) = -1` or `0 (mod 2n)`.
    pub fn in_main_congruence(&self) -> bool {
        self.congruence_residue == 2 * self.n - 1 || self.congruence_residue == 0
    }

    /// Odd and self-summable: the conclusion of the theorem.
    pub fn certifies(&self) -> bool {
        self.fib_n_odd && self.divisibility_holds
    }
}

/// Certificates for `n = 2p` and `n = 4p`.
///
/// Divisibility is checked on the unreduced index `F(n) + 2`, so it does not
/// lean on any period fact.
pub fn theorem_family(p: &QualifyingPrime) -> Vec<FamilyCertificate> {
    [2, 4]
        .into_iter()
        .map(|mult| {
            let n = mult * p.p();
            let fn_ = fib(n as i64);
            let two_n = 2 * n;
            let congruence_residue = (&fn_ % two_n).to_u64().expect("below 2n");
            let divisibility_holds = fib_mod(&(&fn_ + 2u32), &fn_).expect("F(n) >= 1").is_one();
            FamilyCertificate {
                p: *p,
                n,
                fib_n_odd: fn_.bit(0),
                congruence_residue,
                reduced_index: (congruence_residue + 2) % two_n,
                divisibility_holds,
            }
        })
        .collect()
}

/// `m = 3 * 2^(j+3)` divides `S(m)`.
pub fn check_even_family(j: u32) -> bool {
    let m = BigInt::from(3u32) << (j as usize + 3);
    sum_fib_mod(&m, &m).expect("m > 0").is_zero()
}

/// `n | F(n)`.
pub fn is_self_fibonacci(n: u64) -> Result<bool> {
    require_positive("n", n)?;
    Ok(fib_mod(&BigInt::from(n), &BigInt::from(n))?.is_zero())
}

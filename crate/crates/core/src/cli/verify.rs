use std::fmt;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::fibcore::fib_mod;
use crate::identities::{
    check_addition, check_cassini, check_luca_difference, check_parity_rule,
    check_strong_divisibility, check_sum_identity, IdentityVerdict,
};
use crate::pisano::{check_lcm_rule, check_prop_pisano, check_wall, ratio_bound};
use crate::primes::{first_qualifying_primes, primes_up_to, sp_residue};
use crate::selfsum::{
    check_even_family, is_self_summable_with, scan_odd_self_summable, scan_self_summable,
    theorem_family, Strategy,
};

/// Named invariant sweeps. `--limit` replaces the upper end of each sweep's
/// main range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Sum,
    Cassini,
    Addition,
    Luca,
    StrongDivisibility,
    Parity,
    Residues,
    PropPisano,
    Wall,
    Lcm,
    Ratio,
    Lists,
    Family,
    EvenFamily,
    Kernel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub cases: u64,
    /// First failing witness, if any.
    pub failure: Option<String>,
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self
            .suite
            .to_possible_value()
            .map(|v| v.get_name().to_owned())
            .unwrap_or_default();
        match &self.failure {
            None => write!(f, "PASS {name} ({} cases)", self.cases),
            Some(w) => write!(f, "FAIL {name} after {} cases: {w}", self.cases),
        }
    }
}

/// Counts cases and keeps the first failure.
struct Sweep {
    suite: Suite,
    cases: u64,
    failure: Option<String>,
}

impl Sweep {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            cases: 0,
            failure: None,
        }
    }

    /// Record one case; returns false once a failure has been seen.
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.cases += 1;
        if !ok {
            self.failure = Some(witness());
        }
        self.failure.is_none()
    }

    fn verdict(&mut self, v: &IdentityVerdict) -> bool {
        self.check(v.holds, || v.to_string())
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            suite: self.suite,
            cases: self.cases,
            failure: self.failure,
        }
    }
}

const PAPER_LIST: [u64; 16] = [1, 2, 3, 12, 24, 34, 36, 46, 48, 60, 68, 72, 92, 94, 96, 106];
const PAPER_ODD_LIST: [u64; 14] = [1, 2, 34, 46, 68, 92, 94, 106, 166, 188, 212, 214, 226, 274];

pub fn run_suite(suite: Suite, limit: Option<i64>) -> Result<SuiteOutcome> {
    let upto = |default: i64| limit.unwrap_or(default);
    let mut s = Sweep::new(suite);
    match suite {
        Suite::All => {}
        Suite::Sum => {
            for n in 0..=upto(5000).max(0) as u64 {
                if !s.verdict(&check_sum_identity(n)) {
                    break;
                }
            }
        }
        Suite::Cassini => {
            for n in -50..=upto(500) {
                if !s.verdict(&check_cassini(n)) {
                    break;
                }
            }
        }
        Suite::Addition => {
            for n in 0..=upto(500).max(0) as u64 {
                if !s.verdict(&check_addition(n)) {
                    break;
                }
            }
        }
        Suite::Luca => {
            'outer: for a in 1..=upto(200) {
                for b in (a % 2..a).step_by(2) {
                    if !s.verdict(&check_luca_difference(a, b)?) {
                        break 'outer;
                    }
                }
            }
        }
        Suite::StrongDivisibility => {
            let top = upto(200).max(0) as u64;
            'outer: for a in 1..=top {
                for b in 1..=top {
                    if !s.verdict(&check_strong_divisibility(a, b)?) {
                        break 'outer;
                    }
                }
            }
        }
        Suite::Parity => {
            for k in 1..=upto(3000).max(0) as u64 {
                if !s.verdict(&check_parity_rule(k)?) {
                    break;
                }
            }
        }
        Suite::Residues => {
            let r3 = sp_residue(3)?;
            let r5 = sp_residue(5)?;
            s.check(r3.sp_mod_p == 1, || format!("S_3 mod 3 = {}", r3.sp_mod_p));
            s.check(r5.sp_mod_p == 2, || format!("S_5 mod 5 = {}", r5.sp_mod_p));
            for p in primes_up_to((upto(10_000).max(0) as u64).saturating_sub(1)) {
                if p <= 5 {
                    continue;
                }
                let r = sp_residue(p)?;
                let expected = if r.character5 == 1 { 1 } else { p - 2 };
                let ok = !r.divisible && r.sp_mod_p == expected;
                if !s.check(ok, || format!("{r:?}, expected residue {expected}")) {
                    break;
                }
            }
        }
        Suite::PropPisano => {
            for n in (2..=upto(2000).max(0) as u64).step_by(2) {
                if !s.check(check_prop_pisano(n)?, || {
                    format!("π(F({n})) does not divide {}", 2 * n)
                }) {
                    break;
                }
            }
        }
        Suite::Wall => {
            for p in primes_up_to((upto(2000).max(0) as u64).saturating_sub(1)) {
                if matches!(p % 5, 2 | 3)
                    && !s.check(check_wall(p)?, || format!("π({p}) ∤ 2({p}+1)"))
                {
                    break;
                }
            }
        }
        Suite::Lcm => {
            for p in primes_up_to((upto(500).max(0) as u64).saturating_sub(1)) {
                if p > 2 && !s.check(check_lcm_rule(p)?, || format!("π(4·{p}) != lcm(6, π({p}))"))
                {
                    break;
                }
            }
        }
        Suite::Ratio => {
            let top = upto(100).max(4) as u64;
            let mut prev = None;
            for m in (2..=top + 2).step_by(2) {
                let r = ratio_bound(m)?;
                if m <= 30 && !s.check(r.holds(), || format!("M={m}: {} > {}", r.observed, r.bound))
                {
                    break;
                }
                if let Some(prev) = prev.filter(|_| m >= 6) {
                    if !s.check(r.bound < prev, || {
                        format!("bound at M={m} not below M={}", m - 2)
                    }) {
                        break;
                    }
                }
                prev = Some(r.bound);
            }
        }
        Suite::Lists => {
            let all: Vec<u64> = scan_self_summable(106).iter().map(|r| r.k).collect();
            s.check(all == PAPER_LIST, || format!("scan(106) = {all:?}"));
            let odd: Vec<u64> = scan_odd_self_summable(274).iter().map(|r| r.k).collect();
            s.check(odd == PAPER_ODD_LIST, || format!("odd scan(274) = {odd:?}"));
        }
        Suite::Family => {
            'outer: for q in first_qualifying_primes(upto(20).max(0) as usize) {
                for c in theorem_family(&q) {
                    let forced = c.n != 2 * q.p() || c.congruence_residue == 2 * c.n - 1;
                    if !s.check(c.certifies() && forced, || format!("{c:?}")) {
                        break 'outer;
                    }
                }
            }
        }
        Suite::EvenFamily => {
            for j in 0..=upto(15).max(0) as u32 {
                if !s.check(check_even_family(j), || format!("3·2^{} ∤ S", j + 3)) {
                    break;
                }
            }
        }
        Suite::Kernel => {
            let moduli = [2i64, 3, 7, 10, 997, 1_000_000_007];
            let (mut a, mut b) = (BigInt::zero(), BigInt::one());
            'outer: for n in 0..=upto(2000) {
                for m in moduli {
                    let got = fib_mod(&BigInt::from(n), &BigInt::from(m))?;
                    let want = &a % m;
                    if !s.check(got == want, || format!("F({n}) mod {m}: {got} != {want}")) {
                        break 'outer;
                    }
                }
                let c = &a + &b;
                a = std::mem::replace(&mut b, c);
            }
            for k in (2..=300u64).step_by(2) {
                let x = is_self_summable_with(k, Strategy::PeriodReduced)?;
                let y = is_self_summable_with(k, Strategy::DirectBigIndex)?;
                if !s.check(x.verdict == y.verdict, || {
                    format!("strategies disagree at k={k}")
                }) {
                    break;
                }
            }
        }
    }
    Ok(s.finish())
}

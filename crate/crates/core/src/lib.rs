//! Divisibility of Fibonacci sums.
//!
//! This crate computes and checks the arithmetic around the question "which
//! `n` divide `F(1) + ... + F(n)`?":
//!
//! * [`fibcore`]: exact and modular Fibonacci/Lucas numbers by fast doubling,
//!   with arbitrary-precision indices on the modular side.
//! * [`identities`]: witness-carrying checkers for Cassini, the addition
//!   rule, the Lucas difference identity, strong divisibility and parity.
//! * [`pisano`]: Pisano periods, `π(F(n)) | 2n`, and the prime-period facts.
//! * [`primes`]: primality, `(5/p)`, `S(p) mod p`, and qualifying primes.
//! * [`selfsum`]: self-summable Fibonacci numbers and the `{2p, 4p}` family.
//! * [`cli`]: the `fibsum` command-line front end.
//!
//! ```
//! use fibsum::selfsum::scan_odd_self_summable;
//!
//! let ks: Vec<u64> = scan_odd_self_summable(106).iter().map(|r| r.k).collect();
//! assert_eq!(ks, [1, 2, 34, 46, 68, 92, 94, 106]);
//! ```
//!
//! The guide under `book/` walks through the same material with runnable
//! snippets; every snippet there is compiled and run as a doc-test of this
//! crate.

pub mod bfile;
pub mod cli;
pub mod error;
pub mod fibcore;
pub mod identities;
mod json;
pub mod pisano;
pub mod primes;
pub mod selfsum;

pub use error::{Error, Result};
pub use fibcore::{fib, fib_mod, fib_pair_mod, lucas, sum_fib, sum_fib_mod, FibPairMod, Integer};

// Book chapters, compiled as doc-tests so the guide cannot drift from the
// code. One module per chapter keeps failures traceable to a file.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fast-doubling.md")]
    mod fast_doubling {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/pisano.md")]
    mod pisano {}
    #[doc = include_str!("../../../book/src/prime-sums.md")]
    mod prime_sums {}
    #[doc = include_str!("../../../book/src/self-summable.md")]
    mod self_summable {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

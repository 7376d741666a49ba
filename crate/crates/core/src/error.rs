use num_bigint::BigInt;
use thiserror::Error;

/// Precondition failures raised by the library.
///
/// Every variant corresponds to an input that falls outside an operation's
/// domain. None of them signal a failed identity; those are reported through
/// verdicts and booleans instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1, got {0}")]
    NonPositiveModulus(BigInt),

    #[error("index must be non-negative, got {0}")]
    NegativeIndex(BigInt),

    #[error("{what} must be at least {min}, got {got}")]
    BelowMinimum {
        what: &'static str,
        min: i64,
        got: BigInt,
    },

    #[error("index must be even, got {0}")]
    OddIndex(BigInt),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is outside the supported range for this operation")]
    OutOfRange(BigInt),

    #[error("prime {p} does not satisfy the hypothesis: {reason}")]
    Hypothesis { p: u64, reason: &'static str },

    #[error("need a > b and a = b (mod 2), got a = {a}, b = {b}")]
    LucaArguments { a: i64, b: i64 },

    #[error("Pisano period of {modulus} not found within {bound} steps")]
    PeriodBoundExceeded { modulus: BigInt, bound: u64 },

    #[error("evaluation strategy {strategy} is not applicable at k = {k}")]
    Strategy { strategy: &'static str, k: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

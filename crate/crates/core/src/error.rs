//! Error type shared by every module.

use alloc::string::String;

/// Convenience alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the kernel.
///
/// `Internal` always means a cross-check between two independent computations
/// disagreed; it is never expected on valid input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    /// Zero was given where a positive integer is required.
    #[error("input must be a positive integer")]
    Zero,
    /// The input has a repeated prime factor.
    #[error("{n} is not square-free (divisible by {p}^2)")]
    NotSquarefree {
        /// The input.
        n: u64,
        /// A prime whose square divides it.
        p: u64,
    },
    /// Pollard rho ran out of budget.
    #[error("factorization of {0} did not complete")]
    FactorizationFailed(u64),
    /// A prime argument was composite, even, or not in the required class.
    #[error("{value} is not {expected}")]
    BadPrime {
        /// The offending value.
        value: u64,
        /// What was required, e.g. "an odd prime".
        expected: &'static str,
    },
    /// An input does not satisfy the operation's precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Matrix/vector shapes do not fit together.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch {
        /// Required length.
        expected: usize,
        /// Supplied length.
        got: usize,
    },
    /// Only discriminants `-4n` with `n = 1, 2 mod 4` are supported.
    #[error("unsupported discriminant -4*{0} (need n = 1 or 2 mod 4)")]
    UnsupportedDiscriminant(u64),
    /// `2^r d` is not a norm from the genus field.
    #[error("2^{r}*{d} is not a norm for n = {n}")]
    NotANorm {
        /// Power of two.
        r: u8,
        /// Odd divisor.
        d: u64,
        /// Modulus.
        n: u64,
    },
    /// A bounded search gave up.
    #[error("search budget {budget} exhausted for {equation}")]
    SearchBudgetExceeded {
        /// Human readable equation.
        equation: String,
        /// The bound that was hit.
        budget: u64,
    },
    /// Too many prime factors for an exponential-size enumeration.
    #[error("{0} has too many prime factors for enumeration")]
    TooManyPrimes(u64),
    /// Arithmetic would exceed the fixed-width range.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// Two independent computations disagreed.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

//! Crate-wide error type.
//!
//! All arithmetic in this crate is exact: anything that would leave the
//! `i64` coefficient carrier is reported as [`Error::Overflow`] instead of
//! wrapping or saturating. The remaining variants are domain checks that
//! callers can trigger with out-of-contract arguments.

use thiserror::Error;

use crate::cyclo::CycloElement;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation exceeded the `i64` coefficient range.
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    /// Quotient-ring operations need a modulus of at least 2.
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(usize),

    /// The special-element test is defined only in Z[T]/(T^3 - 1).
    #[error("operation is defined only for modulus 3, got {0}")]
    ModulusNotThree(usize),

    /// Arithmetic between elements of different quotient rings.
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),

    /// A residue-reduction difference that should have been a constant
    /// multiple of 1 + T + T^2 was not; the difference is kept as a
    /// witness rather than silently discarded.
    #[error("difference {difference} is not a constant multiple of 1 + T + T^2")]
    NotPhiMultiple { difference: CycloElement },

    #[error("{what} must be between {min} and {max}, got {got}")]
    OutOfRange {
        what: &'static str,
        got: u64,
        min: u64,
        max: u64,
    },

    /// Part windows are index ranges a:b with 1 <= a <= b.
    #[error("invalid part window {a}:{b} (need 1 <= a <= b)")]
    InvalidWindow { a: u32, b: u32 },

    /// Argument outside an operation's documented domain.
    #[error("{0}")]
    Domain(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

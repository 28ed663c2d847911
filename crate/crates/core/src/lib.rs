//! Exact arithmetic for Fibonacci-partition statistics and the
//! quotient-ring structure behind them.
//!
//! The layers, bottom up:
//!
//! - [`intpoly`] — dense integer polynomials with checked arithmetic;
//! - [`cyclo`] — the rings `Z[T]/(T^d - 1)`, residue-class reduction of
//!   polynomials, and the 3-class special-element test;
//! - [`delta`] — continuant polynomials of integer vectors (equivalently
//!   tridiagonal determinants), entrywise folding mod 3, and S-values;
//! - [`fibparts`] — partitions into distinct Fibonacci parts `1, 2, 3,
//!   5, 8, ...`, counted by number of parts, plus residue-class counts;
//! - [`series`] — truncated and windowed expansions of
//!   `prod (1 - x^{f_i})`;
//! - [`harness`] — verification sweeps over all of the above, reporting
//!   violations as data in deterministic JSON.
//!
//! Everything is exact: computations that would leave `i64` fail loudly
//! with [`Error::Overflow`].

pub mod cyclo;
pub mod delta;
pub mod error;
pub mod fibparts;
pub mod harness;
pub mod intpoly;
pub mod series;

pub use cyclo::{CycloElement, SpecialReason, SpecialVerdict};
pub use delta::DeltaVector;
pub use error::{Error, Result};
pub use fibparts::{PartitionStats, ShallitCheck};
pub use harness::{HarnessOptions, SpreadRecord, Theorem1Mode, VerificationReport};
pub use intpoly::IntPoly;
pub use series::SeriesCoeffs;

//! Truncated expansions of the signed products `prod (1 - x^{f_i})`.
//!
//! Expanding the product over all Fibonacci parts gives
//! `1 + sum_n chi(n) x^n`, where `chi(n)` collects each partition of `n`
//! signed by the parity of its number of parts — i.e.
//! `chi(n) = r_{2,0}(n) - r_{2,1}(n)`. The windowed variant multiplies
//! only the factors for `f_a .. f_b` and is not truncated: its degree is
//! the sum of the window.
//!
//! Coefficient-bound checks return their findings as ordinary values —
//! a coefficient outside `[-1, 1]` is a result to report, not an error.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibparts::{fibs_by_index, fibs_upto};

/// Coefficients of a truncated or exact product expansion, indexed by
/// exponent starting at `x^0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesCoeffs {
    coeffs: Vec<i64>,
}

impl SeriesCoeffs {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; zero past the stored range.
    pub fn coeff(&self, n: usize) -> i64 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    /// Highest exponent stored.
    pub fn upto(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest absolute coefficient value.
    pub fn max_abs(&self) -> u64 {
        self.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    /// First exponent whose coefficient leaves `[-1, 1]`, with the value.
    pub fn first_violation(&self) -> Option<(usize, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|&(_, &c)| c.unsigned_abs() > 1)
            .map(|(n, &c)| (n, c))
    }

    /// CSV records `n,coeff`, one per exponent.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coeff\n");
        for (n, &c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

/// Multiplies `(1 - x^f)` for each part into `coeffs`, truncating at the
/// vector length.
fn fold_factors(coeffs: &mut [i64], parts: &[u64]) -> Result<()> {
    let n = coeffs.len() - 1;
    for &f in parts {
        let fu = f as usize;
        if fu > n {
            continue;
        }
        for j in (fu..=n).rev() {
            coeffs[j] = coeffs[j].checked_sub(coeffs[j - fu]).ok_or(Error::Overflow)?;
        }
    }
    Ok(())
}

/// Coefficients 0..=`upto` of the product over every Fibonacci part.
pub fn chi_series(upto: u64) -> Result<SeriesCoeffs> {
    if upto == 0 {
        return Err(Error::Domain("series bound must be at least 1"));
    }
    let n = usize::try_from(upto).map_err(|_| Error::Overflow)?;
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = 1;
    fold_factors(&mut coeffs, &fibs_upto(upto))?;
    Ok(SeriesCoeffs { coeffs })
}

/// Exact (untruncated) expansion of the product over the window
/// `f_a .. f_b`; the result has degree `f_a + ... + f_b`.
pub fn chi_window(a: u32, b: u32) -> Result<SeriesCoeffs> {
    if a < 1 || a > b {
        return Err(Error::InvalidWindow { a, b });
    }
    let fibs = fibs_by_index(b)?;
    let parts = &fibs[(a - 1) as usize..];
    let total: u64 = parts.iter().try_fold(0u64, |acc, &f| {
        acc.checked_add(f).ok_or(Error::Overflow)
    })?;
    let n = usize::try_from(total).map_err(|_| Error::Overflow)?;
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = 1;
    fold_factors(&mut coeffs, parts)?;
    Ok(SeriesCoeffs { coeffs })
}

/// Summary of a windowed expansion for reporting: the window, the largest
/// absolute coefficient, and the first out-of-bound witness if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowBoundReport {
    pub a: u32,
    pub b: u32,
    pub max_abs_coeff: u64,
    pub witness: Option<ViolationWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationWitness {
    pub n: u64,
    pub value: i64,
}

/// Runs [`chi_window`] and summarizes its coefficient bound.
pub fn window_bound_report(a: u32, b: u32) -> Result<WindowBoundReport> {
    let series = chi_window(a, b)?;
    let witness = series
        .first_violation()
        .map(|(n, value)| ViolationWitness { n: n as u64, value });
    Ok(WindowBoundReport {
        a,
        b,
        max_abs_coeff: series.max_abs(),
        witness,
    })
}

//! Python bindings: the polynomial and ring types, the partition and
//! determinant operations, and the verification suites (as JSON strings).

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use fibpart::delta::DeltaVector;
use fibpart::harness::{self, HarnessOptions, Theorem1Mode};
use fibpart::{cyclo, fibparts, series};

fn to_py_err(e: fibpart::Error) -> PyErr {
    match e {
        fibpart::Error::Overflow => PyOverflowError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Integer polynomial with dense coefficients (index = exponent).
#[pyclass(name = "IntPoly", frozen, eq)]
#[derive(PartialEq)]
struct PyIntPoly {
    inner: fibpart::IntPoly,
}

#[pymethods]
impl PyIntPoly {
    #[new]
    fn new(coeffs: Vec<i64>) -> Self {
        PyIntPoly {
            inner: fibpart::IntPoly::from_coeffs(coeffs),
        }
    }

    /// Parses the textual form, e.g. "1 - t + 3*t^4".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyIntPoly {
            inner: text.parse().map_err(to_py_err)?,
        })
    }

    fn coeffs(&self) -> Vec<i64> {
        self.inner.coeffs().to_vec()
    }

    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    /// Sum of all coefficients (the value at t = 1).
    fn norm(&self) -> PyResult<i64> {
        self.inner.norm().map_err(to_py_err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyIntPoly {
            inner: self.inner.add(&other.inner).map_err(to_py_err)?,
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyIntPoly {
            inner: self.inner.sub(&other.inner).map_err(to_py_err)?,
        })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyIntPoly {
            inner: self.inner.mul(&other.inner).map_err(to_py_err)?,
        })
    }

    fn __neg__(&self) -> PyResult<Self> {
        Ok(PyIntPoly {
            inner: self.inner.neg().map_err(to_py_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("IntPoly({:?})", self.inner.coeffs())
    }
}

/// Element of K_d[T] = Z[T]/(T^d - 1) with d coefficients.
#[pyclass(name = "CycloElement", frozen, eq)]
#[derive(PartialEq)]
struct PyCycloElement {
    inner: fibpart::CycloElement,
}

#[pymethods]
impl PyCycloElement {
    #[new]
    fn new(d: usize, coeffs: Vec<i64>) -> PyResult<Self> {
        Ok(PyCycloElement {
            inner: fibpart::CycloElement::new(d, coeffs).map_err(to_py_err)?,
        })
    }

    fn d(&self) -> usize {
        self.inner.d()
    }

    fn coeffs(&self) -> Vec<i64> {
        self.inner.coeffs().to_vec()
    }

    /// Sum of all coefficients (the image of norm under reduction).
    fn norm(&self) -> PyResult<i64> {
        self.inner.norm().map_err(to_py_err)
    }

    /// Multiplication by T: a cyclic coefficient rotation.
    fn mul_by_t(&self) -> Self {
        PyCycloElement {
            inner: self.inner.mul_by_t(),
        }
    }

    /// For d = 3 only: all coefficients equal, or pairwise absolute
    /// differences summing to two.
    fn is_special(&self) -> PyResult<bool> {
        Ok(self.inner.is_special().map_err(to_py_err)?.is_special)
    }

    /// Which branch of the special test applied: "all-equal",
    /// "pairwise-diff-sum-two", or "not-special".
    fn special_reason(&self) -> PyResult<String> {
        let verdict = self.inner.is_special().map_err(to_py_err)?;
        Ok(serde_reason(&verdict.reason))
    }

    /// For d = 3 only: whether this element times T - 1 is one of the
    /// seven values 0, ±(T-1), ±T(T-1), ±T²(T-1).
    fn in_m_after_shift(&self) -> PyResult<bool> {
        self.inner.in_m_after_shift().map_err(to_py_err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyCycloElement {
            inner: self.inner.add(&other.inner).map_err(to_py_err)?,
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyCycloElement {
            inner: self.inner.sub(&other.inner).map_err(to_py_err)?,
        })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyCycloElement {
            inner: self.inner.mul(&other.inner).map_err(to_py_err)?,
        })
    }

    fn __neg__(&self) -> PyResult<Self> {
        Ok(PyCycloElement {
            inner: self.inner.neg().map_err(to_py_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CycloElement({}, {:?})", self.inner.d(), self.inner.coeffs())
    }
}

fn serde_reason(reason: &fibpart::SpecialReason) -> String {
    match reason {
        fibpart::SpecialReason::AllEqual => "all-equal".into(),
        fibpart::SpecialReason::PairwiseDiffSumTwo => "pairwise-diff-sum-two".into(),
        fibpart::SpecialReason::NotSpecial => "not-special".into(),
    }
}

/// Fibonacci numbers under the 1, 2, 3, 5, ... indexing, up to `limit`.
#[pyfunction]
fn fibs_upto(limit: u64) -> Vec<u64> {
    fibparts::fibs_upto(limit)
}

/// Partition-count polynomial of n: coefficient h counts the partitions
/// of n into h distinct Fibonacci parts.
#[pyfunction]
#[pyo3(signature = (n, window=None))]
fn phi(n: u64, window: Option<(u32, u32)>) -> PyResult<PyIntPoly> {
    let inner = match window {
        None => fibparts::phi(n),
        Some((a, b)) => fibparts::phi_window(n, a, b),
    }
    .map_err(to_py_err)?;
    Ok(PyIntPoly { inner })
}

/// Signed tridiagonal determinant polynomial of a vector of nonnegative
/// entries.
#[pyfunction]
fn delta(entries: Vec<u32>) -> PyResult<PyIntPoly> {
    Ok(PyIntPoly {
        inner: fibpart::delta::delta(&DeltaVector::new(entries)).map_err(to_py_err)?,
    })
}

/// Image of a polynomial in K_d[T]: coefficient sums by exponent residue
/// class.
#[pyfunction]
#[pyo3(signature = (poly, d=3))]
fn reduce(poly: &PyIntPoly, d: usize) -> PyResult<PyCycloElement> {
    Ok(PyCycloElement {
        inner: cyclo::reduce(&poly.inner, d).map_err(to_py_err)?,
    })
}

/// S-value of a vector: its determinant's K_3 image times T - 1.
#[pyfunction]
fn s_element(entries: Vec<u32>) -> PyResult<PyCycloElement> {
    Ok(PyCycloElement {
        inner: fibpart::delta::s_element(&DeltaVector::new(entries)).map_err(to_py_err)?,
    })
}

/// The integer k with R(Δ(A)) - R(Δ(A mod 3)) = k·(1 + T + T²).
#[pyfunction]
fn k_multiplier(entries: Vec<u32>) -> PyResult<i64> {
    fibpart::delta::k_multiplier(&DeltaVector::new(entries)).map_err(to_py_err)
}

/// Partition counts of n by number of parts mod d; optionally restricted
/// to the part window a..=b.
#[pyfunction]
#[pyo3(signature = (n, d=3, window=None))]
fn r_counts(n: u64, d: usize, window: Option<(u32, u32)>) -> PyResult<Vec<u64>> {
    Ok(fibparts::r_counts(n, d, window).map_err(to_py_err)?.counts)
}

/// The bundled 3-class checks for n, as (holds, spread_ok, product_zero,
/// counts).
#[pyfunction]
fn shallit_check(n: u64) -> PyResult<(bool, bool, bool, Vec<u64>)> {
    let check = fibparts::shallit_check(n).map_err(to_py_err)?;
    Ok((
        check.holds(),
        check.spread_ok,
        check.product_zero,
        check.stats.counts,
    ))
}

/// Coefficients 0..=upto of the signed product over all Fibonacci parts.
#[pyfunction]
fn chi(upto: u64) -> PyResult<Vec<i64>> {
    Ok(series::chi_series(upto).map_err(to_py_err)?.coeffs().to_vec())
}

/// Largest coefficient magnitude of the signed product over the part
/// window a..=b.
#[pyfunction]
fn chi_window_max_abs(a: u32, b: u32) -> PyResult<u64> {
    Ok(series::window_bound_report(a, b)
        .map_err(to_py_err)?
        .max_abs_coeff)
}

fn options(
    workers: Option<usize>,
    seed: Option<u64>,
    witness_cap: usize,
    timing: bool,
) -> HarnessOptions {
    let defaults = HarnessOptions::default();
    HarnessOptions {
        workers,
        seed: seed.unwrap_or(defaults.seed),
        witness_cap,
        record_timing: timing,
    }
}

/// Sweep determinants of vectors for 3-specialness; returns the JSON
/// report. Mode "exhaustive" walks all {0,1,2}-vectors up to max_m;
/// "random" draws `trials` seeded vectors with entries up to entry_bound.
#[pyfunction]
#[pyo3(signature = (mode="exhaustive", max_m=9, entry_bound=30, trials=10_000,
                    workers=None, seed=None, witness_cap=100, timing=true))]
#[allow(clippy::too_many_arguments)]
fn verify_theorem1(
    mode: &str,
    max_m: usize,
    entry_bound: u32,
    trials: u64,
    workers: Option<usize>,
    seed: Option<u64>,
    witness_cap: usize,
    timing: bool,
) -> PyResult<String> {
    let mode = match mode {
        "exhaustive" => Theorem1Mode::Exhaustive { max_m },
        "random" => Theorem1Mode::Random {
            max_m,
            entry_bound,
            trials,
        },
        other => {
            return Err(PyValueError::new_err(format!(
                "mode must be \"exhaustive\" or \"random\", got {other:?}"
            )))
        }
    };
    let report = harness::verify_theorem1(&mode, &options(workers, seed, witness_cap, timing))
        .map_err(to_py_err)?;
    Ok(report.to_json())
}

/// Sweep random vectors checking that entry-wise mod-3 reduction shifts
/// the determinant's K_3 image by an integer multiple of 1 + T + T²;
/// returns the JSON report.
#[pyfunction]
#[pyo3(signature = (trials=10_000, max_m=8, entry_bound=30,
                    workers=None, seed=None, witness_cap=100, timing=true))]
fn verify_lemma4(
    trials: u64,
    max_m: usize,
    entry_bound: u32,
    workers: Option<usize>,
    seed: Option<u64>,
    witness_cap: usize,
    timing: bool,
) -> PyResult<String> {
    let report = harness::verify_lemma4(
        trials,
        max_m,
        entry_bound,
        &options(workers, seed, witness_cap, timing),
    )
    .map_err(to_py_err)?;
    Ok(report.to_json())
}

/// Check the mod-3 spread and coincidence conditions for every n in
/// lo..=hi; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (lo=1, hi=100_000, workers=None, seed=None, witness_cap=100, timing=true))]
fn verify_theorem2(
    lo: u64,
    hi: u64,
    workers: Option<usize>,
    seed: Option<u64>,
    witness_cap: usize,
    timing: bool,
) -> PyResult<String> {
    let report = harness::verify_theorem2(lo, hi, &options(workers, seed, witness_cap, timing))
        .map_err(to_py_err)?;
    Ok(report.to_json())
}

/// Check the windowed mod-3 conditions for every part window a..=b with
/// a <= a_max, b <= b_max; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (a_max=12, b_max=12, workers=None, seed=None, witness_cap=100, timing=true))]
fn verify_hypothesis1(
    a_max: u32,
    b_max: u32,
    workers: Option<usize>,
    seed: Option<u64>,
    witness_cap: usize,
    timing: bool,
) -> PyResult<String> {
    let report =
        harness::verify_hypothesis1(a_max, b_max, &options(workers, seed, witness_cap, timing))
            .map_err(to_py_err)?;
    Ok(report.to_json())
}

/// Check that some two class counts mod d coincide at every n up to the
/// bound; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (d=3, upto=10_000, workers=None, seed=None, witness_cap=100, timing=true))]
fn verify_hypothesis3(
    d: usize,
    upto: u64,
    workers: Option<usize>,
    seed: Option<u64>,
    witness_cap: usize,
    timing: bool,
) -> PyResult<String> {
    let report = harness::verify_hypothesis3(d, upto, &options(workers, seed, witness_cap, timing))
        .map_err(to_py_err)?;
    Ok(report.to_json())
}

/// Cross-check the fast routines against independent implementations;
/// returns the JSON report.
#[pyfunction]
#[pyo3(signature = (n_cap=500, m_cap=6, workers=None, seed=None, witness_cap=100, timing=true))]
fn verify_oracles(
    n_cap: u64,
    m_cap: usize,
    workers: Option<usize>,
    seed: Option<u64>,
    witness_cap: usize,
    timing: bool,
) -> PyResult<String> {
    let report = harness::verify_oracles(n_cap, m_cap, &options(workers, seed, witness_cap, timing))
        .map_err(to_py_err)?;
    Ok(report.to_json())
}

/// Record pairwise class-count gap mod d up to each probe bound, as JSON
/// (one record per bound).
#[pyfunction]
#[pyo3(signature = (d=4, bounds=vec![10_000]))]
fn explore_hypothesis2(d: usize, bounds: Vec<u64>) -> PyResult<String> {
    let points = harness::spread_curve(d, &bounds).map_err(to_py_err)?;
    serde_json::to_string_pretty(&points)
        .map_err(|e| PyValueError::new_err(format!("cannot serialize records: {e}")))
}

#[pymodule]
fn fibpart_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIntPoly>()?;
    m.add_class::<PyCycloElement>()?;
    m.add_function(wrap_pyfunction!(fibs_upto, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(s_element, m)?)?;
    m.add_function(wrap_pyfunction!(k_multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(r_counts, m)?)?;
    m.add_function(wrap_pyfunction!(shallit_check, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(chi_window_max_abs, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma4, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem2, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hypothesis1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hypothesis3, m)?)?;
    m.add_function(wrap_pyfunction!(verify_oracles, m)?)?;
    m.add_function(wrap_pyfunction!(explore_hypothesis2, m)?)?;
    Ok(())
}

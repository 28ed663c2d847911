//! Partitions of an integer into distinct Fibonacci parts, counted by
//! number of parts.
//!
//! Throughout the crate the Fibonacci numbers are indexed `f_1 = 1`,
//! `f_2 = 2`, `f_i = f_{i-1} + f_{i-2}`, so the parts are
//! `1, 2, 3, 5, 8, 13, ...` with no repeated 1. A partition of `n` is a
//! subset of these summing to `n`; its statistic is the subset size.
//!
//! [`phi`] returns the generating polynomial `sum_h #(partitions of n with
//! h parts) * t^h`. Reducing it mod `T^d - 1` gives the residue-class
//! counts `r_{d,i}(n)` of partitions whose number of parts is
//! `≡ i (mod d)`; evaluating at `t = 1` gives the total count.

use serde::{Deserialize, Serialize};

use crate::cyclo;
use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

/// Default ceiling for [`phi_brute`]; the enumeration is exponential in
/// the number of available parts and exists only to check the fast path.
pub const BRUTE_CAP: u64 = 2000;

/// Fibonacci numbers `f_1, f_2, ...` not exceeding `limit`, ascending.
pub fn fibs_upto(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let (mut cur, mut next) = (1u64, 2u64);
    while cur <= limit {
        out.push(cur);
        match cur.checked_add(next) {
            Some(sum) => {
                cur = next;
                next = sum;
            }
            None => {
                if next <= limit {
                    out.push(next);
                }
                break;
            }
        }
    }
    out
}

/// The first `k` Fibonacci numbers `f_1 .. f_k`.
pub fn fibs_by_index(k: u32) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(k as usize);
    let (mut cur, mut next) = (1u64, 2u64);
    for _ in 0..k {
        out.push(cur);
        let sum = cur.checked_add(next).ok_or(Error::Overflow)?;
        cur = next;
        next = sum;
    }
    Ok(out)
}

/// The window `f_a .. f_b` of parts, for `1 <= a <= b`.
fn window_parts(a: u32, b: u32) -> Result<Vec<u64>> {
    if a < 1 || a > b {
        return Err(Error::InvalidWindow { a, b });
    }
    let fibs = fibs_by_index(b)?;
    Ok(fibs[(a - 1) as usize..].to_vec())
}

/// Subset-sum table for one target: `t`-weighted 0/1 knapsack over
/// `parts`, walking sums downward so each part is used at most once.
/// Sums that cannot reach `n` even with every still-unprocessed part are
/// skipped as sources.
fn subset_sum_poly(parts: &[u64], n: u64) -> Result<IntPoly> {
    let nu = usize::try_from(n).map_err(|_| Error::Overflow)?;
    let mut remaining: u128 = parts.iter().map(|&f| u128::from(f)).sum();
    let mut table: Vec<IntPoly> = vec![IntPoly::zero(); nu + 1];
    table[0] = IntPoly::one();
    // Largest part first makes the reachability cut bite sooner.
    for &f in parts.iter().rev() {
        if f <= n {
            let fu = f as usize;
            let lo = if remaining >= u128::from(n) {
                0
            } else {
                nu - remaining as usize
            };
            for s in (lo..=nu - fu).rev() {
                if !table[s].is_zero() {
                    let bumped = table[s].shift(1);
                    table[s + fu] = table[s + fu].add(&bumped)?;
                }
            }
        }
        remaining -= u128::from(f);
    }
    Ok(std::mem::take(&mut table[nu]))
}

/// Generating polynomial of the partitions of `n`: the coefficient of
/// `t^h` counts partitions into exactly `h` parts. Requires `n >= 1`.
pub fn phi(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1"));
    }
    subset_sum_poly(&fibs_upto(n), n)
}

/// Generating polynomials for every `n` up to `n_max` in one pass; entry
/// `n` of the result is `phi(n)`, with entry 0 the empty partition's `1`.
pub fn phi_batch(n_max: u64) -> Result<Vec<IntPoly>> {
    let nu = usize::try_from(n_max).map_err(|_| Error::Overflow)?;
    let mut table: Vec<IntPoly> = vec![IntPoly::zero(); nu + 1];
    table[0] = IntPoly::one();
    for f in fibs_upto(n_max) {
        let fu = f as usize;
        for s in (fu..=nu).rev() {
            if !table[s - fu].is_zero() {
                let bumped = table[s - fu].shift(1);
                table[s] = table[s].add(&bumped)?;
            }
        }
    }
    Ok(table)
}

/// [`phi`] by explicit subset enumeration with branch-and-bound, capped at
/// [`BRUTE_CAP`]. Exists as an oracle for the table-based path.
pub fn phi_brute(n: u64) -> Result<IntPoly> {
    phi_brute_capped(n, BRUTE_CAP)
}

/// [`phi_brute`] with an explicit cap for callers that knowingly wait.
pub fn phi_brute_capped(n: u64, cap: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1"));
    }
    if n > cap {
        return Err(Error::OutOfRange {
            what: "brute-force enumeration target",
            got: n,
            min: 1,
            max: cap,
        });
    }
    let mut desc = fibs_upto(n);
    desc.reverse();
    // suffix[i] = sum of desc[i..]; lets dead branches stop early
    let mut suffix = vec![0u128; desc.len() + 1];
    for i in (0..desc.len()).rev() {
        suffix[i] = suffix[i + 1] + u128::from(desc[i]);
    }

    fn walk(desc: &[u64], suffix: &[u128], idx: usize, left: u64, parts: usize, counts: &mut Vec<i64>) {
        if left == 0 {
            if counts.len() <= parts {
                counts.resize(parts + 1, 0);
            }
            counts[parts] += 1;
            return;
        }
        if idx >= desc.len() || suffix[idx] < u128::from(left) {
            return;
        }
        if desc[idx] <= left {
            walk(desc, suffix, idx + 1, left - desc[idx], parts + 1, counts);
        }
        walk(desc, suffix, idx + 1, left, parts, counts);
    }

    let mut counts = Vec::new();
    walk(&desc, &suffix, 0, n, 0, &mut counts);
    Ok(IntPoly::from_coeffs(counts))
}

/// Generating polynomial of the partitions of `n` drawing parts only from
/// the window `f_a .. f_b`. Zero when `n` is not representable there.
pub fn phi_window(n: u64, a: u32, b: u32) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1"));
    }
    let parts = window_parts(a, b)?;
    let total: u128 = parts.iter().map(|&f| u128::from(f)).sum();
    if u128::from(n) > total {
        return Ok(IntPoly::zero());
    }
    subset_sum_poly(&parts, n)
}

/// Windowed generating polynomials for every representable sum at once;
/// entry `n` is `phi_window(n, a, b)`, and the table runs up to the sum of
/// the whole window.
pub fn phi_window_batch(a: u32, b: u32) -> Result<Vec<IntPoly>> {
    let parts = window_parts(a, b)?;
    let total: u64 = parts.iter().try_fold(0u64, |acc, &f| {
        acc.checked_add(f).ok_or(Error::Overflow)
    })?;
    let nu = usize::try_from(total).map_err(|_| Error::Overflow)?;
    let mut table: Vec<IntPoly> = vec![IntPoly::zero(); nu + 1];
    table[0] = IntPoly::one();
    for &f in &parts {
        let fu = f as usize;
        for s in (fu..=nu).rev() {
            if !table[s - fu].is_zero() {
                let bumped = table[s - fu].shift(1);
                table[s] = table[s].add(&bumped)?;
            }
        }
    }
    Ok(table)
}

/// Residue-class partition counts for one `n`: entry `i` of `counts` is
/// the number of partitions whose number of parts is `≡ i (mod d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionStats {
    pub n: u64,
    pub d: usize,
    pub window: Option<(u32, u32)>,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl PartitionStats {
    /// Largest pairwise gap between class counts.
    pub fn spread(&self) -> u64 {
        let max = self.counts.iter().copied().max().unwrap_or(0);
        let min = self.counts.iter().copied().min().unwrap_or(0);
        max - min
    }

    /// Header line matching [`csv_row`](Self::csv_row) for a given `d`.
    pub fn csv_header(d: usize) -> String {
        let mut cols = vec!["n".to_string(), "d".to_string(), "a".to_string(), "b".to_string()];
        cols.extend((0..d).map(|i| format!("r{i}")));
        cols.push("total".to_string());
        cols.join(",")
    }

    /// One CSV record `n,d,a,b,r0..r_{d-1},total`; the window columns stay
    /// empty when the full part list was used.
    pub fn csv_row(&self) -> String {
        let (a, b) = match self.window {
            Some((a, b)) => (a.to_string(), b.to_string()),
            None => (String::new(), String::new()),
        };
        let mut cols = vec![self.n.to_string(), self.d.to_string(), a, b];
        cols.extend(self.counts.iter().map(|c| c.to_string()));
        cols.push(self.total.to_string());
        cols.join(",")
    }
}

/// Computes [`PartitionStats`] for `n`, optionally restricted to the part
/// window `f_a .. f_b`.
pub fn r_counts(n: u64, d: usize, window: Option<(u32, u32)>) -> Result<PartitionStats> {
    if d < 2 {
        return Err(Error::InvalidModulus(d));
    }
    let p = match window {
        None => phi(n)?,
        Some((a, b)) => phi_window(n, a, b)?,
    };
    stats_from_poly(&p, n, d, window)
}

/// Folds an already computed generating polynomial into class counts.
pub fn stats_from_poly(
    p: &IntPoly,
    n: u64,
    d: usize,
    window: Option<(u32, u32)>,
) -> Result<PartitionStats> {
    let image = cyclo::reduce(p, d)?;
    let mut counts = Vec::with_capacity(d);
    let mut total = 0u64;
    for &c in image.coeffs() {
        let c = u64::try_from(c).map_err(|_| Error::Overflow)?;
        total = total.checked_add(c).ok_or(Error::Overflow)?;
        counts.push(c);
    }
    Ok(PartitionStats { n, d, window, counts, total })
}

/// Residue-class counts for every `n` up to `n_max` at once, without
/// building polynomials: the table cell for sum `s` is the length-`d`
/// vector of class counts. Row 0 is the empty partition (class 0).
///
/// This is a second, coarser route to the same numbers as
/// [`r_counts`]; the two are held in agreement by tests.
pub fn r_counts_batch(n_max: u64, d: usize) -> Result<Vec<Vec<u64>>> {
    if d < 2 {
        return Err(Error::InvalidModulus(d));
    }
    let nu = usize::try_from(n_max).map_err(|_| Error::Overflow)?;
    let mut table = vec![vec![0u64; d]; nu + 1];
    table[0][0] = 1;
    for f in fibs_upto(n_max) {
        let fu = f as usize;
        for s in (fu..=nu).rev() {
            let (lower, upper) = table.split_at_mut(s);
            let src = &lower[s - fu];
            if src.iter().all(|&x| x == 0) {
                continue;
            }
            let dst = &mut upper[0];
            // one more part: every class moves up by one
            for i in 0..d {
                let j = (i + 1) % d;
                dst[j] = dst[j].checked_add(src[i]).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(table)
}

/// The 3-class checks bundled: the class counts may pairwise differ by at
/// most one, and at least two of the three must coincide (equivalently,
/// the product of their pairwise differences vanishes).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShallitCheck {
    pub spread_ok: bool,
    pub product_zero: bool,
    pub stats: PartitionStats,
}

impl ShallitCheck {
    pub fn holds(&self) -> bool {
        self.spread_ok && self.product_zero
    }
}

pub fn shallit_check(n: u64) -> Result<ShallitCheck> {
    let stats = r_counts(n, 3, None)?;
    Ok(shallit_check_from_stats(stats))
}

/// The check itself, for callers that already hold the stats.
pub fn shallit_check_from_stats(stats: PartitionStats) -> ShallitCheck {
    let r0 = stats.counts[0] as i128;
    let r1 = stats.counts[1] as i128;
    let r2 = stats.counts[2] as i128;
    let spread_ok =
        (r0 - r1).abs() <= 1 && (r0 - r2).abs() <= 1 && (r1 - r2).abs() <= 1;
    let product_zero = (r0 - r1) * (r0 - r2) * (r1 - r2) == 0;
    ShallitCheck { spread_ok, product_zero, stats }
}

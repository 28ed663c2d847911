//! Dense polynomials over the integers with checked arithmetic.
//!
//! Coefficients are stored by exponent: index `h` holds the coefficient of
//! `t^h`. The representation is canonical — the highest stored coefficient
//! is nonzero, and the zero polynomial is the empty vector — so structural
//! equality is polynomial equality. Every operation is exact; `i64`
//! overflow surfaces as [`Error::Overflow`], never as a wrapped value.

use std::fmt;
use std::str::FromStr;

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cap on exponents accepted by the text parser, so a stray `t^999999999`
/// cannot demand a multi-gigabyte table.
const MAX_PARSE_EXPONENT: usize = 1 << 20;

/// A polynomial in `Z[t]`, dense over `i64` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    /// `coeff * t^exp`.
    pub fn monomial(coeff: i64, exp: usize) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![0; exp + 1];
        coeffs[exp] = coeff;
        IntPoly { coeffs }
    }

    /// Builds a polynomial from coefficients indexed by exponent, trimming
    /// trailing zeros to restore canonical form.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Coefficients indexed by exponent; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `t^h`, zero beyond the stored degree.
    pub fn coeff(&self, h: usize) -> i64 {
        self.coeffs.get(h).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the leading term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for h in 0..n {
            out.push(self.coeff(h).checked_add(other.coeff(h)).ok_or(Error::Overflow)?);
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for h in 0..n {
            out.push(self.coeff(h).checked_sub(other.coeff(h)).ok_or(Error::Overflow)?);
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn neg(&self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c.checked_neg().ok_or(Error::Overflow)?);
        }
        Ok(IntPoly { coeffs: out })
    }

    /// Exact product. Partial sums are accumulated in `i128` (a product of
    /// two `i64` always fits), then each coefficient is checked back into
    /// `i64`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut acc = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let xw = i128::from(x);
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let cell = &mut acc[i + j];
                *cell = cell.checked_add(xw * i128::from(y)).ok_or(Error::Overflow)?;
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|c| i64::try_from(c).map_err(|_| Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    /// Multiplication by `t^k`. Cannot overflow, so it stays infallible.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k + self.coeffs.len()];
        coeffs[k..].copy_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Coefficient sum, i.e. the evaluation at `t = 1`.
    pub fn norm(&self) -> Result<i64> {
        let mut total = 0i64;
        for &c in &self.coeffs {
            total = total.checked_add(c).ok_or(Error::Overflow)?;
        }
        Ok(total)
    }
}

/// Renders `coeffs` as a sum of `var`-power terms: `"3 - t + 2*t^4"`.
/// Shared by the polynomial and quotient-ring display impls.
pub(crate) fn render_terms(f: &mut fmt::Formatter<'_>, coeffs: &[i64], var: char) -> fmt::Result {
    if coeffs.iter().all(|&c| c == 0) {
        return write!(f, "0");
    }
    let mut first = true;
    for (h, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
            first = false;
        } else if c < 0 {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mag = c.unsigned_abs();
        if h == 0 {
            write!(f, "{mag}")?;
        } else {
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            if h == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{h}")?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    /// Text form `"c0 + c1*t + c2*t^2"` with zero terms omitted, unit
    /// coefficients elided, and the zero polynomial printed as `"0"`.
    /// [`IntPoly::from_str`] accepts everything this produces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_terms(f, &self.coeffs, 't')
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses the [`fmt::Display`] text form: signed terms `c`, `t`,
    /// `c*t`, `t^h`, or `c*t^h`, joined by `+` / `-`, with free use of
    /// whitespace. Repeated exponents accumulate.
    fn from_str(s: &str) -> Result<Self> {
        let b = s.as_bytes();
        let n = b.len();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < n && b[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };

        let parse_number = |i: &mut usize| -> Result<Option<i64>> {
            let start = *i;
            while *i < n && b[*i].is_ascii_digit() {
                *i += 1;
            }
            if *i == start {
                return Ok(None);
            }
            s[start..*i]
                .parse::<i64>()
                .map(Some)
                .map_err(|_| Error::Parse(format!("coefficient out of range: {}", &s[start..*i])))
        };

        skip_ws(&mut i);
        if i == n {
            return Err(Error::Parse("empty polynomial".into()));
        }

        let mut acc: Vec<i64> = Vec::new();
        let mut first = true;
        while i < n {
            let mut sign = 1i64;
            if first {
                if b[i] == b'+' {
                    i += 1;
                } else if b[i] == b'-' {
                    sign = -1;
                    i += 1;
                }
            } else {
                match b[i] {
                    b'+' => i += 1,
                    b'-' => {
                        sign = -1;
                        i += 1;
                    }
                    _ => {
                        return Err(Error::Parse(format!(
                            "expected '+' or '-' at byte {i} of {s:?}"
                        )))
                    }
                }
            }
            skip_ws(&mut i);

            let coeff = parse_number(&mut i)?;
            let mut exp: Option<usize> = coeff.map(|_| 0);
            skip_ws(&mut i);
            let mut saw_star = false;
            if i < n && b[i] == b'*' {
                i += 1;
                skip_ws(&mut i);
                saw_star = true;
                if i == n || b[i] != b't' {
                    return Err(Error::Parse(format!("expected 't' after '*' in {s:?}")));
                }
            }
            if i < n && b[i] == b't' && (saw_star || coeff.is_none()) {
                i += 1;
                if i < n && b[i] == b'^' {
                    i += 1;
                    match parse_number(&mut i)? {
                        Some(e) if (e as u128) <= MAX_PARSE_EXPONENT as u128 => {
                            exp = Some(e as usize);
                        }
                        Some(_) => {
                            return Err(Error::Parse(format!("exponent too large in {s:?}")));
                        }
                        None => {
                            return Err(Error::Parse(format!("missing exponent after '^' in {s:?}")));
                        }
                    }
                } else {
                    exp = Some(1);
                }
            } else if coeff.is_none() {
                return Err(Error::Parse(format!("expected a term at byte {i} of {s:?}")));
            }

            let exp = exp.expect("term has either a coefficient or a variable");
            let coeff = sign * coeff.unwrap_or(1);
            if acc.len() <= exp {
                acc.resize(exp + 1, 0);
            }
            acc[exp] = acc[exp].checked_add(coeff).ok_or(Error::Overflow)?;

            first = false;
            skip_ws(&mut i);
        }
        Ok(Self::from_coeffs(acc))
    }
}

impl Serialize for IntPoly {
    /// JSON form: the bare coefficient array, e.g. `[0, 1, 1]` for
    /// `t + t^2`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::from_coeffs(Vec::<i64>::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.to_vec())
    }

    #[test]
    fn add_combines_coefficients() {
        // (t + t^2) + (1 - t) = 1 + t^2
        let sum = poly(&[0, 1, 1]).add(&poly(&[1, -1])).unwrap();
        assert_eq!(sum, poly(&[1, 0, 1]));
    }

    #[test]
    fn cancellation_restores_canonical_form() {
        let p = poly(&[0, 0, 7]);
        let diff = p.sub(&p).unwrap();
        assert!(diff.is_zero());
        assert_eq!(diff.coeffs(), &[] as &[i64]);
        assert_eq!(diff.degree(), None);
    }

    #[test]
    fn mul_small_example() {
        // (1 + t)(1 - t) = 1 - t^2
        let prod = poly(&[1, 1]).mul(&poly(&[1, -1])).unwrap();
        assert_eq!(prod, poly(&[1, 0, -1]));
    }

    #[test]
    fn shift_is_monomial_multiplication() {
        let p = poly(&[3, 0, -2]);
        assert_eq!(p.shift(2), p.mul(&IntPoly::monomial(1, 2)).unwrap());
        assert_eq!(IntPoly::zero().shift(5), IntPoly::zero());
    }

    #[test]
    fn norm_sums_coefficients() {
        assert_eq!(poly(&[1, -3, 2, 7]).norm().unwrap(), 7);
        assert_eq!(IntPoly::zero().norm().unwrap(), 0);
    }

    #[test]
    fn overflow_is_an_error_not_a_wrap() {
        let top = poly(&[i64::MAX]);
        assert_eq!(top.add(&IntPoly::one()), Err(Error::Overflow));
        assert_eq!(top.mul(&poly(&[2])), Err(Error::Overflow));
        assert_eq!(poly(&[i64::MIN]).neg(), Err(Error::Overflow));
        assert_eq!(poly(&[i64::MAX, 0, 1]).add(&poly(&[1])), Err(Error::Overflow));
        assert_eq!(poly(&[i64::MAX, i64::MAX]).norm(), Err(Error::Overflow));
    }

    #[test]
    fn display_examples() {
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(poly(&[0, 1, 1]).to_string(), "t + t^2");
        assert_eq!(poly(&[1, 0, -3]).to_string(), "1 - 3*t^2");
        assert_eq!(poly(&[0, -1]).to_string(), "-t");
        assert_eq!(poly(&[-2, 0, 0, 1]).to_string(), "-2 + t^3");
    }

    #[test]
    fn parse_examples() {
        assert_eq!("0".parse::<IntPoly>().unwrap(), IntPoly::zero());
        assert_eq!("t + t^2".parse::<IntPoly>().unwrap(), poly(&[0, 1, 1]));
        assert_eq!("1 - 3*t^2".parse::<IntPoly>().unwrap(), poly(&[1, 0, -3]));
        assert_eq!("  -t  ".parse::<IntPoly>().unwrap(), poly(&[0, -1]));
        assert_eq!("2*t^3 + t^3".parse::<IntPoly>().unwrap(), poly(&[0, 0, 0, 3]));
        assert_eq!("5".parse::<IntPoly>().unwrap(), poly(&[5]));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        for bad in ["", "  ", "t^", "2*", "1 ++ t", "x", "t^99999999999", "3t"] {
            assert!(bad.parse::<IntPoly>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let p = poly(&[0, 1, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[0,1,1]");
        assert_eq!(serde_json::from_str::<IntPoly>(&json).unwrap(), p);
        // Non-canonical input normalizes on the way in.
        assert_eq!(serde_json::from_str::<IntPoly>("[1,0]").unwrap(), poly(&[1]));
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-1000i64..=1000, 0..12).prop_map(IntPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn canonical_no_trailing_zero(p in small_poly()) {
            prop_assert!(p.coeffs().last() != Some(&0));
        }

        #[test]
        fn add_commutes(p in small_poly(), q in small_poly()) {
            prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        }

        #[test]
        fn mul_commutes(p in small_poly(), q in small_poly()) {
            prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        }

        #[test]
        fn mul_associates(p in small_poly(), q in small_poly(), r in small_poly()) {
            let left = p.mul(&q).unwrap().mul(&r).unwrap();
            let right = p.mul(&q.mul(&r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn mul_distributes_over_add(p in small_poly(), q in small_poly(), r in small_poly()) {
            let left = p.mul(&q.add(&r).unwrap()).unwrap();
            let right = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn norm_is_multiplicative_and_additive(p in small_poly(), q in small_poly()) {
            prop_assert_eq!(
                p.add(&q).unwrap().norm().unwrap(),
                p.norm().unwrap() + q.norm().unwrap()
            );
            prop_assert_eq!(
                p.mul(&q).unwrap().norm().unwrap(),
                p.norm().unwrap() * q.norm().unwrap()
            );
        }

        #[test]
        fn shift_matches_monomial_mul(p in small_poly(), k in 0usize..32) {
            prop_assert_eq!(p.shift(k), p.mul(&IntPoly::monomial(1, k)).unwrap());
        }

        #[test]
        fn text_round_trip(p in small_poly()) {
            let rendered = p.to_string();
            prop_assert_eq!(rendered.parse::<IntPoly>().unwrap(), p);
        }

        #[test]
        fn json_round_trip_prop(p in small_poly()) {
            let json = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<IntPoly>(&json).unwrap(), p);
        }
    }
}

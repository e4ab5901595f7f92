//! Arithmetic modes for probability computations.
//!
//! Finite-state problems run in one of two modes: exact rational arithmetic
//! (`BigRational`), where certificates and mixture identities hold exactly,
//! and double-precision floats with a fixed tolerance of `1e-9` on
//! probability identities. The [`Scalar`] trait abstracts over the two so
//! the finite-distribution machinery is written once.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Tolerance used for probability identities in float mode.
pub const FLOAT_TOL: f64 = 1e-9;

/// A probability-like number: exact rational or tolerant float.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + 'static
{
    /// True when equality is decidable (rational mode).
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Mode-appropriate equality: exact, or within [`FLOAT_TOL`].
    fn close_to(&self, other: &Self) -> bool;

    /// Mode-appropriate sign check: `>= 0`, or `>= -FLOAT_TOL`.
    fn is_nonnegative(&self) -> bool;

    /// Treated as a zero pivot by the exact LP solver.
    fn is_zero_pivot(&self) -> bool;

    /// Total order. Probability computations never produce NaN, so this is
    /// well-defined in float mode too.
    fn total_cmp(&self, other: &Self) -> Ordering;

    /// Parse from a textual form: `"a/b"`, a decimal literal, or an integer.
    fn parse_text(text: &str) -> Result<Self, String>;

    /// Canonical textual form (used for rational-mode JSON).
    fn render(&self) -> String;

    /// Canonical JSON value: rationals as `"num/den"` strings (which
    /// survive JSON number limits), floats as JSON numbers.
    fn to_json(&self) -> serde_json::Value;

    /// Parse from a JSON value in the mode's canonical encoding.
    fn from_json(value: &serde_json::Value) -> Result<Self, String>;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn close_to(&self, other: &Self) -> bool {
        self == other
    }

    fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    fn is_zero_pivot(&self) -> bool {
        self.is_zero()
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn parse_text(text: &str) -> Result<Self, String> {
        parse_rational(text)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.render())
    }

    fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        match value {
            serde_json::Value::String(s) => parse_rational(s),
            // with arbitrary-precision numbers the literal digits survive,
            // so "0.1" parses to exactly 1/10
            serde_json::Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(format!("expected a number or \"num/den\" string, got {other}")),
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn close_to(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOL
    }

    fn is_nonnegative(&self) -> bool {
        *self >= -FLOAT_TOL
    }

    fn is_zero_pivot(&self) -> bool {
        self.abs() <= 1e-12
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }

    fn parse_text(text: &str) -> Result<Self, String> {
        if let Some((num, den)) = text.split_once('/') {
            let num: f64 = num.trim().parse().map_err(|e| format!("{e}"))?;
            let den: f64 = den.trim().parse().map_err(|e| format!("{e}"))?;
            if den == 0.0 {
                return Err("zero denominator".into());
            }
            Ok(num / den)
        } else {
            text.trim().parse().map_err(|e| format!("{e}"))
        }
    }

    fn render(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::new(&mut out);
        serde::Serialize::serialize(self, &mut ser).expect("float serialization");
        String::from_utf8(out).expect("utf8 float")
    }

    fn to_json(&self) -> serde_json::Value {
        match serde_json::Number::from_f64(*self) {
            Some(n) => serde_json::Value::Number(n),
            None => serde_json::Value::String(format!("{self}")),
        }
    }

    fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        match value {
            serde_json::Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| format!("number {n} out of f64 range")),
            serde_json::Value::String(s) => Self::parse_text(s),
            other => Err(format!("expected a number, got {other}")),
        }
    }
}

/// Exact parse of `"a/b"`, decimal literals (`"0.25"`, `"1e-3"`), or integers
/// into a rational. Decimal strings are read in base ten, so `"0.1"` becomes
/// exactly 1/10.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty number".into());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let den: BigInt = den.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(num, den));
    }
    // Decimal / scientific literal, parsed exactly in base ten.
    let (mantissa, exp10) = match text.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|e| format!("bad exponent: {e}"))?;
            (m, exp)
        }
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let sign = if int_part.starts_with('-') { -1 } else { 1 };
    let digits: String = int_part
        .trim_start_matches(['-', '+'])
        .chars()
        .chain(frac_part.chars())
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("not a number: {text:?}"));
    }
    let unsigned: BigInt = digits.parse().map_err(|e| format!("{e}"))?;
    let mantissa_value = BigInt::from(sign) * unsigned;
    let shift = exp10 - frac_part.len() as i64;
    let base = BigInt::from(10u32);
    let scaled = if shift >= 0 {
        BigRational::from_integer(mantissa_value * base.pow(shift as u32))
    } else {
        BigRational::new(mantissa_value, base.pow((-shift) as u32))
    };
    Ok(scaled)
}

//! Arithmetic backends and decimal conversion helpers.
//!
//! Every formula in the crate is written once against the [`Scalar`] trait and
//! evaluated either in `f64` (fast, tolerance-based verdicts) or in exact
//! rational arithmetic (authoritative near semidefiniteness boundaries).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

use crate::graph::{Vertex, WeightedGraph};

/// Exact rational scalar backing the exact backend and all stored weights.
pub type Rational = num::BigRational;

/// Number type a curvature computation can run in.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Send
    + Sync
    + 'static
{
    /// The rational number `num / den`. `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::ratio(v, 1)
    }

    /// Weight of the edge from `x` to its `idx`-th neighbor (adjacency order).
    fn edge_weight(g: &WeightedGraph, x: Vertex, idx: usize) -> Self;

    /// Vertex measure `m_x`.
    fn measure(g: &WeightedGraph, x: Vertex) -> Self;

    fn abs(&self) -> Self;

    fn is_negative(&self) -> bool;
}

impl Scalar for f64 {
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn edge_weight(g: &WeightedGraph, x: Vertex, idx: usize) -> Self {
        g.edge_weight_f64(x, idx)
    }

    fn measure(g: &WeightedGraph, x: Vertex) -> Self {
        g.measure_f64(x)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

impl Scalar for Rational {
    fn ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn edge_weight(g: &WeightedGraph, x: Vertex, idx: usize) -> Self {
        g.edge_weight_exact(x, idx).clone()
    }

    fn measure(g: &WeightedGraph, x: Vertex) -> Self {
        g.measure_exact(x).clone()
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Parses a plain decimal literal such as `3`, `-0.25`, or `1.5` into an
/// exact rational. Fraction literals `p/q` are accepted as well so that any
/// serialized graph can be read back.
pub fn parse_number(s: &str) -> Option<Rational> {
    if let Some((p, q)) = s.split_once('/') {
        let num = parse_decimal(p)?;
        let den = parse_decimal(q)?;
        if den.is_zero() {
            return None;
        }
        return Some(num / den);
    }
    parse_decimal(s)
}

/// Parses a plain decimal literal into an exact rational.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let t = s.strip_prefix('+').unwrap_or(s);
    let (neg, t) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int_part, frac_part) = match t.split_once('.') {
        Some((a, b)) => (a, b),
        None => (t, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    let den = BigInt::from(10u8).pow(frac_part.len() as u32);
    let r = Rational::new(num, den);
    Some(if neg { -r } else { r })
}

/// Renders a rational whose reduced denominator divides a power of ten as the
/// shortest exact decimal, e.g. `1/4` becomes `0.25`. Returns `None` for
/// rationals with no finite decimal expansion.
pub fn decimal_string(r: &Rational) -> Option<String> {
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let k = twos.max(fives);
    let scaled = (r.numer() * BigInt::from(10u8).pow(k) / r.denom()).abs();
    let digits = scaled.to_string();
    let sign = if r.numer().is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    if k == 0 {
        return Some(format!("{sign}{digits}"));
    }
    let k = k as usize;
    let padded = if digits.len() <= k {
        format!("{}{}", "0".repeat(k + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - k);
    Some(format!("{sign}{int_part}.{frac_part}"))
}

/// Renders a number as an integer when whole and as a reduced fraction
/// `p/q` otherwise.
pub fn exact_string(r: &Rational) -> String {
    r.to_string()
}

/// Formats a float with 12 significant digits. Values whose plain decimal
/// form would be unwieldy fall back to scientific notation.
pub fn significant_digits(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = 11 - exp;
    if (0..=17).contains(&decimals) {
        format!("{:.*}", decimals as usize, v)
    } else {
        format!("{:.11e}", v)
    }
}

/// Exact rational from an `f64`, which is always a dyadic rational.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

//! Numeric payloads for finite extended reals.
//!
//! Three backends are provided: `i64` and [`Rational64`] are exact, `f64` is
//! approximate. Every arithmetic routine in the crate is generic over
//! [`Scalar`], so the same code path serves integer-exact solvers and
//! floating-point data.

use std::fmt::{Debug, Display};
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;

use crate::extreal::ExtendedReal;

/// A totally ordered additive group used as the finite part of [`ExtendedReal`].
///
/// Implementations must never produce NaN; `f64` values that overflow to an
/// IEEE infinity are mapped to the matching infinity tag by [`Scalar::lift`].
pub trait Scalar:
    Copy
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether equality tests on this payload are exact.
    const EXACT: bool;

    fn zero() -> Self;

    fn from_i64(v: i64) -> Self;

    /// Parses a decimal integer or decimal fraction token.
    fn parse_finite(token: &str) -> Option<Self>;

    fn is_integral(&self) -> bool;

    fn to_f64(&self) -> f64;

    /// Wraps a computed value, normalizing overflowed floats.
    fn lift(self) -> ExtendedReal<Self> {
        ExtendedReal::Finite(self)
    }

    /// Absolute difference, used only by tolerance-based termination.
    fn abs_diff(self, other: Self) -> f64 {
        (self - other).to_f64().abs()
    }
}

impl Scalar for i64 {
    const EXACT: bool = true;

    fn zero() -> Self {
        0
    }

    fn from_i64(v: i64) -> Self {
        v
    }

    fn parse_finite(token: &str) -> Option<Self> {
        let t = token.strip_prefix('+').unwrap_or(token);
        if let Ok(v) = t.parse::<i64>() {
            return Some(v);
        }
        // "3.0" and "3." are accepted as integers; "3.5" is not.
        let (int, frac) = t.split_once('.')?;
        if !frac.chars().all(|c| c == '0') {
            return None;
        }
        match int {
            "" | "-" => Some(0),
            _ => int.parse().ok(),
        }
    }

    fn is_integral(&self) -> bool {
        true
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn parse_finite(token: &str) -> Option<Self> {
        if !is_decimal(token) {
            return None;
        }
        token.parse::<f64>().ok().filter(|v| v.is_finite())
    }

    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn lift(self) -> ExtendedReal<Self> {
        if self.is_nan() {
            panic!("NaN reached the extended-real layer");
        } else if self == f64::INFINITY {
            ExtendedReal::PosInf
        } else if self == f64::NEG_INFINITY {
            ExtendedReal::NegInf
        } else if self == 0.0 {
            // fold -0.0
            ExtendedReal::Finite(0.0)
        } else {
            ExtendedReal::Finite(self)
        }
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational64::from_integer(0)
    }

    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }

    fn parse_finite(token: &str) -> Option<Self> {
        if let Some((num, den)) = token.split_once('/') {
            let num: i64 = num.strip_prefix('+').unwrap_or(num).parse().ok()?;
            let den: i64 = den.parse().ok()?;
            return (den != 0).then(|| Rational64::new(num, den));
        }
        if !is_decimal(token) {
            return None;
        }
        let t = token.strip_prefix('+').unwrap_or(token);
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        let digits = format!("{int}{frac}");
        let num: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let r = Rational64::new(num, den);
        Some(if neg { -r } else { r })
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Optional sign, digits, optional fractional part. No exponents, no words.
fn is_decimal(token: &str) -> bool {
    let t = token
        .strip_prefix('-')
        .or_else(|| token.strip_prefix('+'))
        .unwrap_or(token);
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    (!int.is_empty() || !frac.is_empty())
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.bytes().all(|b| b.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_tokens() {
        assert_eq!(i64::parse_finite("-12"), Some(-12));
        assert_eq!(i64::parse_finite("+3"), Some(3));
        assert_eq!(i64::parse_finite("4.00"), Some(4));
        assert_eq!(i64::parse_finite("4.5"), None);
        assert_eq!(i64::parse_finite("abc"), None);
    }

    #[test]
    fn float_tokens_reject_words_and_exponents() {
        assert_eq!(f64::parse_finite("0.25"), Some(0.25));
        assert_eq!(f64::parse_finite("-.5"), Some(-0.5));
        assert_eq!(f64::parse_finite("inf"), None);
        assert_eq!(f64::parse_finite("NaN"), None);
        assert_eq!(f64::parse_finite("1e3"), None);
    }

    #[test]
    fn rational_tokens() {
        assert_eq!(Rational64::parse_finite("-1.25"), Some(Rational64::new(-5, 4)));
        assert_eq!(Rational64::parse_finite("2/6"), Some(Rational64::new(1, 3)));
        assert_eq!(Rational64::parse_finite("7"), Some(Rational64::from_integer(7)));
        assert_eq!(Rational64::parse_finite("1/0"), None);
    }

    #[test]
    fn float_lift_normalizes() {
        assert_eq!(f64::INFINITY.lift(), ExtendedReal::PosInf);
        assert_eq!((-0.0f64).lift(), ExtendedReal::Finite(0.0));
    }
}

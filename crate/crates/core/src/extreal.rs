//! Extended reals `ℝ ∪ {−∞, +∞}` with the two addition conventions of the
//! complete max-plus and min-plus algebras.
//!
//! The *lower* addition is max-plus multiplication: `(−∞) ⊗ (+∞) = −∞`.
//! The *upper* addition is min-plus multiplication: `(+∞) ⊗′ (−∞) = +∞`.
//! They agree everywhere else. Scalar residuation `μ\ν`, the largest `λ`
//! with `μ ⊗ λ ≤ ν`, is `ν ⊗′ (−μ)`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An element of `ℝ ∪ {−∞, +∞}`.
///
/// Ordered as `NegInf < Finite(_) < PosInf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal<T> {
    NegInf,
    Finite(T),
    PosInf,
}

pub use ExtendedReal::{Finite, NegInf, PosInf};

// Payloads are never NaN, so equality is total.
impl<T: PartialEq> Eq for ExtendedReal<T> {}

impl<T: PartialOrd> PartialOrd for ExtendedReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Some(Ordering::Equal),
            (NegInf, _) | (_, PosInf) => Some(Ordering::Less),
            (PosInf, _) | (_, NegInf) => Some(Ordering::Greater),
        }
    }
}

impl<T: Scalar> Ord for ExtendedReal<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other)
            .expect("finite payloads are never NaN")
    }
}

impl<T: Scalar> ExtendedReal<T> {
    pub fn zero() -> Self {
        Finite(T::zero())
    }

    pub fn from_i64(v: i64) -> Self {
        Finite(T::from_i64(v))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Max-plus multiplication `a ⊗ b`: `−∞` absorbs everything, including `+∞`.
    pub fn lower_add(self, other: Self) -> Self {
        match (self, other) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Finite(a), Finite(b)) => (a + b).lift(),
        }
    }

    /// Min-plus multiplication `a ⊗′ b`: `+∞` absorbs everything, including `−∞`.
    pub fn upper_add(self, other: Self) -> Self {
        match (self, other) {
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => (a + b).lift(),
        }
    }

    pub fn negate(self) -> Self {
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            Finite(a) => (-a).lift(),
        }
    }

    /// `μ\ν = ν ⊗′ (−μ)`, the greatest `λ` with `μ ⊗ λ ≤ ν`.
    pub fn residual(self, nu: Self) -> Self {
        nu.upper_add(self.negate())
    }

    /// `a − b` taken with the lower convention, i.e. `a ⊗ (−b)`.
    pub fn lower_sub(self, other: Self) -> Self {
        self.lower_add(other.negate())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            PosInf => f64::INFINITY,
            Finite(v) => v.to_f64(),
        }
    }

    /// Parses a single token: `-inf`, `+inf`, `inf`, `-Inf`, `+Inf`, `Inf`,
    /// or a finite decimal accepted by the payload type.
    pub fn parse_token(token: &str) -> Option<Self> {
        match token {
            "-inf" | "-Inf" | "-INF" => Some(NegInf),
            "+inf" | "inf" | "+Inf" | "Inf" | "+INF" | "INF" => Some(PosInf),
            _ => T::parse_finite(token).map(Scalar::lift),
        }
    }
}

/// Free-function forms of the scalar operations.
pub fn lower_add<T: Scalar>(a: ExtendedReal<T>, b: ExtendedReal<T>) -> ExtendedReal<T> {
    a.lower_add(b)
}

pub fn upper_add<T: Scalar>(a: ExtendedReal<T>, b: ExtendedReal<T>) -> ExtendedReal<T> {
    a.upper_add(b)
}

pub fn negate<T: Scalar>(a: ExtendedReal<T>) -> ExtendedReal<T> {
    a.negate()
}

pub fn scalar_residual<T: Scalar>(mu: ExtendedReal<T>, nu: ExtendedReal<T>) -> ExtendedReal<T> {
    mu.residual(nu)
}

impl<T: Scalar> fmt::Display for ExtendedReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("+inf"),
            Finite(v) => write!(f, "{v}"),
        }
    }
}

impl<T: Scalar> std::str::FromStr for ExtendedReal<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_token(s.trim()).ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: format!("invalid scalar token {s:?}"),
        })
    }
}

impl<T: Scalar> serde::Serialize for ExtendedReal<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = ExtendedReal<i64>;

    fn fin(v: i64) -> E {
        Finite(v)
    }

    #[test]
    fn lower_add_conventions() {
        assert_eq!(E::NegInf.lower_add(PosInf), NegInf);
        assert_eq!(PosInf.lower_add(E::NegInf), NegInf);
        assert_eq!(fin(3).lower_add(fin(4)), fin(7));
        assert_eq!(E::PosInf.lower_add(PosInf), PosInf);
        assert_eq!(fin(-2).lower_add(PosInf), PosInf);
    }

    #[test]
    fn upper_add_conventions() {
        assert_eq!(E::PosInf.upper_add(NegInf), PosInf);
        assert_eq!(fin(3).upper_add(fin(4)), fin(7));
        assert_eq!(E::NegInf.upper_add(NegInf), NegInf);
        assert_eq!(fin(5).upper_add(NegInf), NegInf);
    }

    #[test]
    fn negate_swaps_infinities() {
        assert_eq!(E::NegInf.negate(), PosInf);
        assert_eq!(fin(5).negate(), fin(-5));
        assert_eq!(E::PosInf.negate(), NegInf);
    }

    #[test]
    fn residual_examples() {
        assert_eq!(E::NegInf.residual(NegInf), PosInf);
        assert_eq!(E::PosInf.residual(fin(7)), NegInf);
        assert_eq!(fin(2).residual(fin(5)), fin(3));
        assert_eq!(fin(-4).residual(PosInf), PosInf);
    }

    #[test]
    fn order_is_total() {
        assert!(E::NegInf < fin(-1000));
        assert!(fin(1000) < E::PosInf);
        assert_eq!(fin(2).max(E::NegInf), fin(2));
    }

    #[test]
    fn tokens_round_trip() {
        for tok in ["-inf", "+inf", "0", "-7", "12"] {
            let v: E = tok.parse().unwrap();
            assert_eq!(v.to_string(), tok);
        }
        assert_eq!("inf".parse::<E>().unwrap(), PosInf);
        assert_eq!("-Inf".parse::<E>().unwrap(), NegInf);
        assert!("1.5".parse::<E>().is_err());
        assert_eq!("1.5".parse::<ExtendedReal<f64>>().unwrap(), Finite(1.5));
    }

    #[test]
    fn float_overflow_becomes_tag() {
        let big = ExtendedReal::Finite(f64::MAX);
        assert_eq!(big.lower_add(big), PosInf);
    }
}

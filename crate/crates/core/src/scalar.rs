//! Numeric backends.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. Two backends are
//! provided: `f64` and [`Rational`], an arbitrary-precision exact fraction.
//! The exact backend runs with all tolerances at zero, so every sign test
//! and comparison is decided exactly.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Pow, Signed, ToPrimitive, Zero};

/// Exact rational number backed by big integers.
pub type Rational = num_rational::BigRational;

/// Field element used by the solver.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` when arithmetic is exact.
    const EXACT: bool;
    /// Short backend name used in reports (`double` / `rational`).
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn ceil(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact conversion for the rational backend; `None` for NaN/inf.
    fn from_f64(v: f64) -> Option<Self>;
    /// Nearest double. Overflows to `±inf`.
    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;
    /// `base^exp`, computed exactly and then rounded once into the backend.
    fn int_pow(base: u32, exp: u32) -> Self;
    /// Parses a decimal (`-1.25`, `3e5`) or fraction (`p/q`) literal.
    fn parse_literal(s: &str) -> Option<Self>;
    /// Text form that [`Scalar::parse_literal`] reads back to the same value.
    fn to_literal(&self) -> String;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Ceiling as an integer, saturating at `u64::MAX`. Negative values map to 0.
    fn ceil_u64(&self) -> u64;
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "double";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn ceil(&self) -> Self {
        f64::ceil(*self)
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn int_pow(base: u32, exp: u32) -> Self {
        let exact: BigInt = Pow::pow(BigInt::from(base), exp);
        exact.to_f64().unwrap_or(f64::INFINITY)
    }
    fn parse_literal(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.parse::<f64>().ok()?;
                let q = q.parse::<f64>().ok()?;
                (q != 0.0).then(|| p / q).filter(|v| v.is_finite())
            }
            None => s.parse::<f64>().ok().filter(|v| v.is_finite()),
        }
    }
    fn to_literal(&self) -> String {
        // `Debug` is the shortest representation that round-trips.
        format!("{:?}", self)
    }
    fn ceil_u64(&self) -> u64 {
        let c = f64::ceil(*self);
        if c <= 0.0 || c.is_nan() {
            0
        } else if c >= u64::MAX as f64 {
            u64::MAX
        } else {
            c as u64
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn ceil(&self) -> Self {
        Rational::ceil(self)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Option<Self> {
        <Rational as FromPrimitive>::from_f64(v)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if Signed::is_negative(self) {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn int_pow(base: u32, exp: u32) -> Self {
        Rational::from_integer(Pow::pow(BigInt::from(base), exp))
    }
    fn parse_literal(s: &str) -> Option<Self> {
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim_start_matches('+')).ok()?;
            let q = BigInt::from_str(q.trim_start_matches('+')).ok()?;
            return (!Zero::is_zero(&q)).then(|| Rational::new(p, q));
        }
        parse_decimal(s)
    }
    fn to_literal(&self) -> String {
        // num-rational prints `p` for integers and `p/q` otherwise, reduced.
        self.to_string()
    }
    fn ceil_u64(&self) -> u64 {
        let c = Rational::ceil(self).to_integer();
        if Signed::is_negative(&c) {
            0
        } else {
            c.to_u64().unwrap_or(u64::MAX)
        }
    }
}

/// Exact decimal parse: `[-+]digits[.digits][e[-+]digits]`.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{}{}", int_part, frac_part);
    let mut numer = BigInt::from_str(&all_digits).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * Pow::pow(ten, scale as u32))
    } else {
        Rational::new(numer, Pow::pow(ten, scale.unsigned_abs()))
    };
    Some(value)
}

/// Converts a slice between backends through `f64` (lossy for huge rationals).
pub fn to_f64_vec<S: Scalar>(v: &[S]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

/// Infinity norm; zero for an empty slice.
pub fn norm_inf<S: Scalar>(v: &[S]) -> S {
    v.iter().fold(S::zero(), |acc, x| acc.max_of(x.abs()))
}

/// One norm.
pub fn norm_1<S: Scalar>(v: &[S]) -> S {
    v.iter().fold(S::zero(), |acc, x| acc + x.abs())
}

/// Inner product.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x.clone() * y.clone()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn rational_add_sub_is_exact() {
        let a = q(1, 3);
        let b = Rational::int_pow(10, 40);
        assert_eq!(a.clone() + b.clone() - b, a);
    }

    #[test]
    fn parse_literals() {
        assert_eq!(Rational::parse_literal("1/3"), Some(q(1, 3)));
        assert_eq!(Rational::parse_literal("-0.25"), Some(q(-1, 4)));
        assert_eq!(Rational::parse_literal("1.5e2"), Some(q(150, 1)));
        assert_eq!(Rational::parse_literal("2e-3"), Some(q(1, 500)));
        assert_eq!(Rational::parse_literal(".5"), Some(q(1, 2)));
        assert_eq!(Rational::parse_literal("1/0"), None);
        assert_eq!(Rational::parse_literal("abc"), None);
        assert_eq!(Rational::parse_literal("-"), None);
        assert_eq!(f64::parse_literal("1/4"), Some(0.25));
        assert_eq!(f64::parse_literal("inf"), None);
    }

    #[test]
    fn literal_round_trip() {
        for v in [q(7, 3), q(-5, 1), q(0, 1), Rational::int_pow(100, 50)] {
            assert_eq!(Rational::parse_literal(&v.to_literal()), Some(v));
        }
        for v in [0.1, -3.0, 1e300, 5e-324, 1.0 / 3.0] {
            assert_eq!(f64::parse_literal(&v.to_literal()), Some(v));
        }
    }

    #[test]
    fn ceil_to_integer() {
        assert_eq!(q(10, 3).ceil_u64(), 4);
        assert_eq!(q(-10, 3).ceil_u64(), 0);
        assert_eq!(3.0_f64.ceil_u64(), 3);
        assert_eq!(3.0000001_f64.ceil_u64(), 4);
        assert_eq!(f64::INFINITY.ceil_u64(), u64::MAX);
    }

    #[test]
    fn int_pow_matches_backends() {
        assert_eq!(f64::int_pow(5, 3), 125.0);
        assert_eq!(Rational::int_pow(2, 10), q(1024, 1));
        assert!(!f64::int_pow(100, 200).is_finite());
    }
}

//! Exact rational and float scalars with promotion.
//!
//! Every yes/no decision procedure in this crate runs on rational inputs
//! with exact arithmetic. Floats enter only through irrational input
//! literals (square roots), eigenvalue computations, and randomized
//! sampling; any mixed operation promotes to float.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for float-mode comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A real scalar, exact rational or 64-bit float.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact `p/q`. Panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_f64(f: f64) -> Self {
        Scalar::Float(f)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(f) => *f,
        }
    }

    /// Exact zero test. Float entries compare against literal `0.0`;
    /// use [`Scalar::is_zero_tol`] for tolerance-aware tests.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(f) => *f == 0.0,
        }
    }

    /// Zero test with tolerance on the float side; exact on rationals.
    pub fn is_zero_tol(&self, tol: f64) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(f) => f.abs() <= tol,
        }
    }

    /// Sign in `{-1, 0, +1}`. Rational side is exact.
    pub fn sign(&self) -> i8 {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Float(f) => {
                if *f == 0.0 {
                    0
                } else if *f > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Sign with a zero band of width `tol` on the float side.
    pub fn sign_tol(&self, tol: f64) -> i8 {
        if self.is_zero_tol(tol) {
            0
        } else {
            self.sign()
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Float(f) => Scalar::Float(1.0 / f),
        })
    }

    /// Equality with exact comparison on rationals and a mixed
    /// absolute/relative tolerance otherwise.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                (a - b).abs() <= tol * 1.0f64.max(a.abs()).max(b.abs())
            }
        }
    }

    /// Parses integers, `p/q` fractions, and decimal literals.
    /// Decimal points force float mode; see the input module for the
    /// square-root expression grammar.
    pub fn parse(s: &str) -> Result<Scalar> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim())
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Scalar::Rational(BigRational::new(p, q)));
        }
        if let Ok(i) = BigInt::from_str(s) {
            return Ok(Scalar::Rational(BigRational::from_integer(i)));
        }
        match s.parse::<f64>() {
            Ok(f) if f.is_finite() => Ok(Scalar::Float(f)),
            _ => Err(Error::Parse(format!("bad scalar literal {s:?}"))),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a $op b),
                    _ => Scalar::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) if !b.is_zero() => Scalar::Rational(a / b),
            _ => Scalar::Float(self.to_f64() / rhs.to_f64()),
        }
    }
}
impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}
impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        (&self).div(rhs)
    }
}
impl Div<Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.div(&rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(_) => serializer.serialize_str(&self.to_string()),
            Scalar::Float(f) => serializer.serialize_f64(*f),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a rational string like \"3/4\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Rational(BigRational::from_integer(BigInt::from(v))))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Float(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                Scalar::parse(v).map_err(|e| E::custom(e.to_string()))
            }
        }
        deserializer.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        assert_eq!(&a + &b, Scalar::ratio(1, 2));
        assert_eq!(&a - &b, Scalar::ratio(1, 6));
        assert_eq!(&a * &b, Scalar::ratio(1, 18));
        assert_eq!(&a / &b, Scalar::from_int(2));
    }

    #[test]
    fn mixed_mode_promotes_to_float() {
        let r = Scalar::ratio(1, 2);
        let f = Scalar::from_f64(0.25);
        let s = &r + &f;
        assert!(!s.is_rational());
        assert!((s.to_f64() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn parse_literals() {
        assert_eq!(Scalar::parse("3/4").unwrap(), Scalar::ratio(3, 4));
        assert_eq!(Scalar::parse("-7").unwrap(), Scalar::from_int(-7));
        assert_eq!(Scalar::parse("2.5").unwrap(), Scalar::Float(2.5));
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("").is_err());
    }

    #[test]
    fn display_lowest_terms() {
        assert_eq!(Scalar::ratio(2, 4).to_string(), "1/2");
        assert_eq!(Scalar::ratio(-6, 3).to_string(), "-2");
        assert_eq!(Scalar::ratio(3, -4).to_string(), "-3/4");
    }

    #[test]
    fn sign_and_zero() {
        assert_eq!(Scalar::ratio(-1, 7).sign(), -1);
        assert_eq!(Scalar::zero().sign(), 0);
        assert!(Scalar::from_f64(1e-12).is_zero_tol(1e-9));
        assert!(!Scalar::from_f64(1e-6).is_zero_tol(1e-9));
    }

    #[test]
    fn serde_round_trip() {
        let vals = vec![Scalar::ratio(-5, 3), Scalar::from_int(4), Scalar::Float(0.5)];
        let json = serde_json::to_string(&vals).unwrap();
        let back: Vec<Scalar> = serde_json::from_str(&json).unwrap();
        assert_eq!(vals[0], back[0]);
        assert_eq!(vals[1], back[1]);
        assert_eq!(vals[2], back[2]);
    }
}

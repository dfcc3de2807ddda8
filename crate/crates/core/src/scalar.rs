//! Scalar traits the matrix and expression code is generic over.
//!
//! [`Ring`] and [`Field`] are the algebraic minimum needed to multiply and
//! invert matrices, so that symbolic rational functions can flow through the
//! same code as numbers. [`Scalar`] adds an order, which positivity checks
//! need; it is implemented for exact rationals and for `f32`/`f64`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

pub trait Field: Ring + Div<Output = Self> {
    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Integer power, negative exponents through the reciprocal.
    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { self.recip() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Embedding of the integers, used to evaluate integer polynomials.
pub trait FromBigInt {
    fn from_bigint(n: &BigInt) -> Self;
}

/// Ordered field elements usable as matrix entries and evaluation points.
pub trait Scalar: Field + FromBigInt + PartialOrd + Signed + FromPrimitive + Send + Sync {
    fn from_i64(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("i64 is representable")
    }

    /// Whether arithmetic on this type is exact.
    fn is_exact() -> bool;
}

impl FromBigInt for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl FromBigInt for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromBigInt for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for BigRational {
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f32 {
    fn is_exact() -> bool {
        false
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter writing rationals as strings such as `"2/9"`.
pub mod rational_str {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }
}

/// Serde adapter for `Vec<BigRational>` as a list of strings.
pub mod rational_vec {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        items
            .iter()
            .map(|t| parse_rational(t).ok_or_else(|| D::Error::custom(format!("bad rational {t:?}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn powi_handles_negative_exponents() {
        assert_eq!(q(2, 3).powi(-2), q(9, 4));
        assert_eq!(q(2, 3).powi(0), q(1, 1));
        assert_eq!(3.0f64.powi(3), 27.0);
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(parse_rational("2/9"), Some(q(2, 9)));
        assert_eq!(parse_rational(" 4/2 "), Some(q(2, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&q(-6, 4)), "-3/2");
        assert_eq!(format_rational(&q(5, 1)), "5");
    }
}

//! Ordered fields used by the shared linear-algebra routines.
//!
//! `f64` comparisons are tolerance based; `BigRational` comparisons are exact.
//! Everything that decides a combinatorial question (facets, membership,
//! lattice tags) is written once against [`Scalar`] and instantiated twice.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Absolute threshold below which an `f64` is treated as zero.
pub const FLOAT_EPS: f64 = 1e-11;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Sign with the field's notion of zero.
    fn sign(&self) -> Ordering;
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn is_zero_s(&self) -> bool {
        self.sign() == Ordering::Equal
    }
    /// Zero test relative to the magnitude of the surrounding data.
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero_s()
    }
    fn abs_s(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-10 * scale.max(1.0)
    }
    fn sign(&self) -> Ordering {
        if self.abs() <= FLOAT_EPS {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Parses `"3/10"`, `"0.125"`, `"-2"` or `"1e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(
        digits
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a number: {s:?}")))?,
    );
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    for _ in 0..shift.unsigned_abs() {
        value = if shift > 0 {
            value * ten.clone()
        } else {
            value / ten.clone()
        };
    }
    Ok(if neg { -value } else { value })
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_f64(x).ok_or_else(|| Error::Parse(format!("non-finite coordinate {x}")))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

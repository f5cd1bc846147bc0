//! Exact arithmetic: rationals, values of the form `q · u · √r` with
//! `u ∈ {1, i}`, and residues modulo the integers.
//!
//! Rationals are always kept in lowest terms with a positive denominator and
//! render as `"num/den"` (the denominator is omitted when it is 1).

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, reducing to lowest terms.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        // Numerator and denominator may individually overflow f64.
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => self.0.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Rational::from_integer(
                s.parse::<BigInt>().map_err(|_| bad())?,
            )),
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(n, d))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// A rational number reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResidueModZ(Rational);

impl ResidueModZ {
    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for ResidueModZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The unique `r` with `0 ≤ r < 1` and `x − r ∈ ℤ`.
pub fn reduce_mod_z(x: &Rational) -> ResidueModZ {
    let floor = Rational::from_integer(x.floor());
    ResidueModZ(x - &floor)
}

/// The unit factor of a [`RadicalValue`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    One,
    I,
}

impl Unit {
    /// Product of two units as `(sign, unit)`; `i·i = −1`.
    pub fn times(self, other: Unit) -> (i64, Unit) {
        match (self, other) {
            (Unit::One, u) | (u, Unit::One) => (1, u),
            (Unit::I, Unit::I) => (-1, Unit::One),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Unit::One => Complex64::new(1.0, 0.0),
            Unit::I => Complex64::new(0.0, 1.0),
        }
    }
}

/// The exact value `coeff · unit · √radicand`.
///
/// Only one radicand per value is supported; `radicand == 1` marks a pure
/// rational (times `unit`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalValue {
    coeff: Rational,
    unit: Unit,
    radicand: u64,
}

impl RadicalValue {
    /// Panics if `radicand` is zero.
    pub fn new(coeff: Rational, unit: Unit, radicand: u64) -> Self {
        assert!(radicand > 0, "radicand must be positive");
        RadicalValue {
            coeff,
            unit,
            radicand,
        }
    }

    pub fn rational(coeff: Rational) -> Self {
        Self::new(coeff, Unit::One, 1)
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.coeff * k, self.unit, self.radicand)
    }

    /// Product; defined when the radicands agree or one side is rational.
    pub fn checked_mul(&self, other: &RadicalValue) -> Result<RadicalValue, Error> {
        let (sign, unit) = self.unit.times(other.unit);
        let coeff = &self.coeff * &other.coeff * Rational::from(sign);
        match (self.radicand, other.radicand) {
            (1, r) | (r, 1) => Ok(RadicalValue::new(coeff, unit, r)),
            (r, s) if r == s => Ok(RadicalValue::new(coeff * Rational::from(r as i64), unit, 1)),
            (r, s) => Err(Error::MixedRadicands(r, s)),
        }
    }

    /// Sum; defined when both terms share unit and radicand, or one is zero.
    pub fn checked_add(&self, other: &RadicalValue) -> Result<RadicalValue, Error> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.radicand != other.radicand {
            return Err(Error::MixedRadicands(self.radicand, other.radicand));
        }
        if self.unit != other.unit {
            return Err(Error::MixedUnits);
        }
        Ok(RadicalValue::new(
            &self.coeff + &other.coeff,
            self.unit,
            self.radicand,
        ))
    }
}

impl fmt::Display for RadicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.coeff)?;
        if self.unit == Unit::I {
            write!(f, "*i")?;
        }
        if self.radicand != 1 {
            write!(f, "*sqrt({})", self.radicand)?;
        }
        Ok(())
    }
}

/// Floating-point evaluation of a [`RadicalValue`].
pub fn radical_to_float(v: &RadicalValue) -> Complex64 {
    let magnitude = v.coeff.to_f64() * (v.radicand as f64).sqrt();
    v.unit.to_complex() * magnitude
}

/// Serde adapter writing integers as decimal strings.
pub mod big_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `base^exp` as an exact integer.
pub fn big_pow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `+1` for even exponents, `-1` for odd.
pub fn neg_one_pow(exp: u64) -> i64 {
    if exp % 2 == 0 {
        1
    } else {
        -1
    }
}

//! Exact rational scalars and the deformation parameter.
//!
//! Every quantity in this crate is an exact rational number: a [`Scalar`] wraps
//! `num::BigRational`, which keeps values in lowest terms with a positive
//! denominator. The deformation parameter q lives in a [`QConfig`] that
//! validates q ∉ {0, 1, -1} and |q| ≠ 1, so no positive power of q equals 1
//! and all q-integer denominators appearing in idempotent interpolation are
//! invertible.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    /// Builds `numer/denom`, normalizing; the denominator must be nonzero.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Bit length of the numerator, used by the elimination pivot rule.
    pub fn numer_bits(&self) -> u64 {
        self.0.numer().abs().bits()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    /// `self^k` for any integer k; negative k requires a nonzero value.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let e = i32::try_from(k).expect("exponent fits in i32");
        Ok(Scalar(self.0.pow(e)))
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }
}

impl fmt::Display for Scalar {
    /// `"p"` for integers, `"p/r"` otherwise; this is the wire format used in
    /// reports and accepted by [`Scalar::from_str`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseScalar(s.to_string());
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
                Ok(Scalar(BigRational::from_integer(n)))
            }
            Some((p, r)) => {
                let n = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(r.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Scalar(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Scalar::from_str(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Div for &Scalar {
    /// Panics on a zero divisor; use [`Scalar::inv`] for a checked inverse.
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

/// Coefficient contract shared by everything that can sit inside an operator
/// polynomial: scalars, tensor operators, free-algebra elements, matrices of
/// free-algebra elements. Multiplication may be noncommutative; `cmul` is
/// `self * rhs` in that order.
pub trait PolyCoeff: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn cadd(&self, rhs: &Self) -> Self;
    fn cmul(&self, rhs: &Self) -> Self;
    fn cneg(&self) -> Self;
    fn cscale(&self, s: &Scalar) -> Self;

    fn csub(&self, rhs: &Self) -> Self {
        self.cadd(&rhs.cneg())
    }
}

/// Coefficients that additionally have context-free zero and one, usable as
/// sparse matrix entries.
pub trait Coeff: PolyCoeff {
    fn czero() -> Self;
    fn cone() -> Self;
}

impl PolyCoeff for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn cadd(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn cmul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn cneg(&self) -> Self {
        -self
    }
    fn cscale(&self, s: &Scalar) -> Self {
        self * s
    }
}

impl Coeff for Scalar {
    fn czero() -> Self {
        Scalar::zero()
    }
    fn cone() -> Self {
        Scalar::one()
    }
}

const POWER_CACHE_BOUND: i64 = 64;

/// The deformation parameter q together with a cache of its powers.
///
/// Validity: q ∉ {0, 1, -1} and |q| ≠ 1. For a rational q this is equivalent
/// to q^k ≠ 1 for every k ≠ 0, which keeps every q-integer and every
/// interpolation denominator q^{2c} - q^{2c'} (c ≠ c') nonzero.
#[derive(Clone, Debug)]
pub struct QConfig {
    q: Scalar,
    /// powers[k + POWER_CACHE_BOUND] = q^k for |k| <= POWER_CACHE_BOUND
    powers: Vec<Scalar>,
}

impl PartialEq for QConfig {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl QConfig {
    pub fn new(q: Scalar) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidQ("q = 0".into()));
        }
        if q.numer().abs() == q.denom().abs() {
            return Err(Error::InvalidQ(format!("|q| = 1 for q = {q}")));
        }
        let mut powers = Vec::with_capacity((2 * POWER_CACHE_BOUND + 1) as usize);
        for k in -POWER_CACHE_BOUND..=POWER_CACHE_BOUND {
            powers.push(q.pow(k).expect("q is nonzero"));
        }
        Ok(QConfig { q, powers })
    }

    /// The default deformation parameter q = 3/2.
    pub fn default_q() -> Self {
        QConfig::new(Scalar::ratio(3, 2).unwrap()).unwrap()
    }

    pub fn parse(s: &str) -> Result<Self> {
        QConfig::new(Scalar::from_str(s)?)
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn q_power(&self, k: i64) -> Scalar {
        if (-POWER_CACHE_BOUND..=POWER_CACHE_BOUND).contains(&k) {
            self.powers[(k + POWER_CACHE_BOUND) as usize].clone()
        } else {
            self.q.pow(k).expect("q is nonzero")
        }
    }

    /// q - q^{-1}, the structure constant of the R-matrix.
    pub fn q_minus_qinv(&self) -> Scalar {
        &self.q_power(1) - &self.q_power(-1)
    }
}

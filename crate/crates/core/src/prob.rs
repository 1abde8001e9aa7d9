//! Exact probabilities.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational in `[0, 1]`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(BigRational);

impl Probability {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::InvalidProbability("x/0".into()));
        }
        Self::from_ratio(BigRational::new(numer.into(), denom))
    }

    pub fn from_ratio(ratio: BigRational) -> Result<Self> {
        if ratio.is_negative() || ratio > BigRational::one() {
            return Err(Error::InvalidProbability(ratio.to_string()));
        }
        Ok(Self(ratio))
    }

    /// Builds `numer / denom` from counts. Panics if `numer > denom` or `denom == 0`.
    pub(crate) fn from_counts(numer: u64, denom: u64) -> Self {
        assert!(denom > 0 && numer <= denom, "{numer}/{denom} is not a probability");
        Self(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
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

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `digits` fractional digits, rounded half up.
    pub fn to_decimal(&self, digits: usize) -> String {
        decimal(self.numer().magnitude(), self.denom().magnitude(), digits)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub(crate) fn decimal(numer: &BigUint, denom: &BigUint, digits: usize) -> String {
    let scale = num_traits::pow(BigUint::from(10u32), digits);
    let scaled = numer * &scale * 2u32 + denom;
    let rounded = scaled / (denom * 2u32);
    let (int, frac) = rounded.div_rem(&scale);
    if digits == 0 {
        return int.to_string();
    }
    let frac = frac.to_string();
    let mut out = int.to_string();
    out.push('.');
    for _ in frac.len()..digits {
        out.push('0');
    }
    out.push_str(&frac);
    out
}

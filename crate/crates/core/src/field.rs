//! Scalar abstraction for the exact linear algebra kernels.
//!
//! Everything that builds matrices (modules, cochain complexes, PBW
//! reductions) is generic over [`Field`]. Rank and kernel computations test
//! entries against zero exactly, so only exact fields give meaningful
//! answers; the crate root fixes [`crate::Rational`] as the default.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, Zero};

/// An exact field usable as matrix scalar.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer not representable in field")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Numerator/denominator pair as decimal strings, used by exporters.
    fn to_fraction_strings(&self) -> (String, String);
}

impl Field for BigRational {
    fn to_fraction_strings(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

impl Field for Ratio<i64> {
    fn to_fraction_strings(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

impl Field for Ratio<i128> {
    fn to_fraction_strings(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

/// Converts an exact rational into any field by numerator and denominator.
pub fn from_big_rational<F: Field>(q: &BigRational) -> F {
    let num: i64 = i64::try_from(q.numer().clone()).expect("numerator overflow");
    let den: i64 = i64::try_from(q.denom().clone()).expect("denominator overflow");
    F::from_ratio(num, den)
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

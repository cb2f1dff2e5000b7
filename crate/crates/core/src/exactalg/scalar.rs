//! Coefficient and matrix-entry traits.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring of polynomials: a field with an ordering sign.
///
/// Implemented for every type satisfying the bounds, in particular for
/// `BigRational` (exact) and `f64`/`f32` (floating point spot checks).
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialEq + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

/// Entry type of a dense [`Matrix`](super::Matrix): a commutative field.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse.
    fn try_inv(&self) -> Result<Self>;
    /// Embedding of a small integer.
    fn from_int(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// True when the element does not depend on any variable.
    fn is_constant(&self) -> bool {
        true
    }

    fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.try_inv()?)
    }
}

macro_rules! scalar_field {
    ($t:ty) => {
        impl Field for $t {
            fn zero() -> Self {
                <$t as Zero>::zero()
            }
            fn one() -> Self {
                <$t as One>::one()
            }
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn try_inv(&self) -> Result<Self> {
                if Zero::is_zero(self) {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(<$t as One>::one() / self.clone())
                }
            }
            fn from_int(n: i64) -> Self {
                <$t as FromPrimitive>::from_i64(n).expect("integer embedding")
            }
        }
    };
}

scalar_field!(BigRational);
scalar_field!(f64);
scalar_field!(f32);

/// Exact rational from a numerator and denominator.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from an integer.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

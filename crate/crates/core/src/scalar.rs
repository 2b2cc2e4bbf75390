//! Scalar traits for the linear-algebra and polynomial layers.
//!
//! Everything above the arithmetic layer works over [`crate::Rational`], but
//! matrices and polynomials are generic so the same elimination code can run
//! over `Ratio<i64>` for small experiments or `f64` for rough numerics.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

/// A commutative ring with unit. Coefficients of Laurent polynomials and
/// Hecke-algebra elements live here.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Whether the value should be treated as zero. Exact types use
    /// `is_zero`; floating point types compare against a tolerance.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

/// A field: a [`Ring`] with division by non-negligible elements.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Marker for fields where equality is exact.
pub trait ExactField: Field + Eq {}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Ring for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}
impl Field for BigRational {}
impl ExactField for BigRational {}

impl Ring for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}
impl Field for Ratio<i64> {}
impl ExactField for Ratio<i64> {}

macro_rules! impl_float {
    ($f:ty, $eps:expr) => {
        impl Ring for $f {
            fn from_i64(n: i64) -> Self {
                n as $f
            }
            fn is_negligible(&self) -> bool {
                self.abs() < $eps
            }
        }
        impl Field for $f {}
    };
}

impl_float!(f32, 1e-5);
impl_float!(f64, 1e-10);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_tolerance() {
        assert!(1e-12f64.is_negligible());
        assert!(!1e-3f64.is_negligible());
        assert!(BigRational::zero().is_negligible());
        assert_eq!(<Ratio<i64> as Field>::inv(&Ratio::new(2, 3)), Ratio::new(3, 2));
    }
}

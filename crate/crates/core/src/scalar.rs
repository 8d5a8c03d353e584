//! Scalar abstractions for the coefficient maps.
//!
//! The quadratic transformation and everything derived from it by algebra
//! alone (scaling coefficients, reduced variables, discriminants) is a
//! rational function of its inputs, so those operations are generic over any
//! ordered field: hardware floats reproduce the numeric traces, exact
//! rationals turn conservation laws into exact equality tests.
//!
//! Operations that need square roots, exponentials, or π (limits, AGM,
//! quadrature) require the stronger [`FloatScalar`] bound.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, NumRef, Signed, ToPrimitive};

/// An ordered field with reference ops and conversions from small integers.
///
/// Implemented by `f32`, `f64`, and `num_rational::BigRational`.
pub trait Scalar:
    NumRef + Signed + FromPrimitive + ToPrimitive + PartialOrd + Clone + Debug + Display
{
}

impl<T> Scalar for T where
    T: NumRef + Signed + FromPrimitive + ToPrimitive + PartialOrd + Clone + Debug + Display
{
}

/// A [`Scalar`] that also supports the usual floating-point functions.
pub trait FloatScalar: Scalar + num_traits::Float + num_traits::FloatConst {}

impl<T> FloatScalar for T where T: Scalar + num_traits::Float + num_traits::FloatConst {}

/// Converts a small integer constant into the scalar type.
pub(crate) fn int<T: Scalar>(n: i32) -> T {
    T::from_i32(n).expect("small integer constant must be representable")
}

/// Converts an `f64` constant (quadrature nodes, tolerances) into the scalar type.
pub(crate) fn real<T: FloatScalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must be representable")
}

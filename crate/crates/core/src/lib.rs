//! Iterative evaluation of rational integrals by integral-preserving
//! coefficient transformations.
//!
//! The centerpiece is a map on the coefficients (a, b, c) of a
//! positive-definite quadratic that leaves ∫ dx/(ax² + bx + c) over ℝ
//! unchanged while driving the triple, at a cubic rate, to the fixed point
//! (½√(4ac − b²), 0, ½√(4ac − b²)) — so the integral falls out of the limit.
//! Around it sit the algebraic scaling that produces the map
//! ([`scaling`]), its closed-form convergence analysis ([`convergence`]),
//! the classical AGM/elliptic prototype ([`agm`]), the analogous parameter
//! iteration for sextic denominators ([`degree6`]), and an adaptive
//! quadrature oracle ([`quadrature`]) that certifies every invariance claim
//! by independent integration.
//!
//! Everything rational in the coefficients is generic over the scalar type:
//! `f64` (or `f32`) reproduces the numeric traces, while
//! [`num_rational::BigRational`] makes conservation laws *exact* — the
//! discriminant stays equal, not merely close, along exact orbits. The
//! aliases below name the two standard instantiations.
//!
//! ```
//! use landen_core::{Quadratic, QuadraticExact, BigRational};
//!
//! // ∫ dx/(4x² + 3x + 1) over ℝ, by iteration and in closed form
//! let q: Quadratic<f64> = Quadratic::new(4.0, 3.0, 1.0)?;
//! let (limit, trace) = q.iterate(1e-10, 30)?;
//! assert_eq!(trace.steps(), 4);
//! assert!((std::f64::consts::PI / limit - q.integral_value()).abs() < 1e-10);
//!
//! // the same step over exact rationals conserves 4ac − b² literally
//! let exact: QuadraticExact = Quadratic::new(
//!     BigRational::from_integer(4.into()),
//!     BigRational::from_integer(3.into()),
//!     BigRational::from_integer(1.into()),
//! )?;
//! assert_eq!(exact.landen_step().discriminant(), exact.discriminant());
//! # Ok::<(), landen_core::Error>(())
//! ```
//!
//! All types are immutable after construction and all operations are pure;
//! everything is safe to use concurrently without synchronization.

pub mod agm;
pub mod convergence;
pub mod degree6;
pub mod error;
pub mod quad;
pub mod quadrature;
pub mod scalar;
pub mod scaling;

pub use agm::{elliptic_g, lemniscate_check, AgmPair, EllipticParams, LemniscateCheck};
pub use convergence::{
    collapsed_step, convergence_order, convergence_order_from_residuals, ConvergenceParams,
    OrderWindow, ReducedState,
};
pub use degree6::{Degree6Denominator, Degree6Row, Degree6Run};
pub use error::{Error, Result};
pub use quad::{IterationTrace, Quadratic, TraceRow};
pub use quadrature::{
    c_integral, integrate_elliptic_form, integrate_rational_line, integrate_trig_form, s_integral,
    QuadratureResult,
};
pub use scalar::{FloatScalar, Scalar};
pub use scaling::{polynomial_identity_residual, step_via_scaling, ScalingCoefficients};

pub use num_rational::BigRational;

/// Double-precision quadratic coefficients.
pub type QuadraticF64 = Quadratic<f64>;
/// Single-precision quadratic coefficients.
pub type QuadraticF32 = Quadratic<f32>;
/// Exact-rational quadratic coefficients.
pub type QuadraticExact = Quadratic<BigRational>;

/// Double-precision iteration trace.
pub type TraceF64 = IterationTrace<f64>;
/// Exact-rational iteration trace.
pub type TraceExact = IterationTrace<BigRational>;

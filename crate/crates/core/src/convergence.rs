//! Convergence analysis of the quadratic iteration.
//!
//! In the variables x = a + c, y = b, z = a − c the coefficient map becomes
//!
//! ```text
//! x₁ = x·(4x² − 3z² − 3y²)/(4x² − y² − z²)
//! z₁ = z·(z² − 3y²)/(4x² − y² − z²)
//! y₁ = y·(3z² − y²)/(4x² − y² − z²)
//! ```
//!
//! with the conserved surface x² − y² − z² = 4ac − b² = w². Substituting the
//! conserved w collapses the x-equation to the scalar map
//! x ↦ x(x² + 3w²)/(3x² + w²), which the cotangent triplication identity
//! U(cot θ)/V(cot θ) = cot 3θ solves in closed form: writing
//! x₀ = w·coth(t), the n-th iterate is exactly xₙ = w·coth(3ⁿt), so the
//! relative error |xₙ/w − 1| = 2/(e^{2t·3ⁿ} − 1) decays cubically.
//!
//! The y and z components have no closed form here; their decay is observed
//! empirically through the full reduced orbit.

use crate::error::{Error, Result};
use crate::quad::{IterationTrace, Quadratic};
use crate::scalar::{int, FloatScalar, Scalar};

/// The iteration state in the reduced variables (x, y, z) = (a + c, b, a − c).
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState<T> {
    x: T,
    y: T,
    z: T,
}

impl<T: Scalar> ReducedState<T> {
    /// Validates x > 0 and x² − y² − z² > 0 (the image of the valid
    /// coefficient region).
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        if x > T::zero() && Self::disc(&x, &y, &z) > T::zero() {
            Ok(Self { x, y, z })
        } else {
            Err(Error::InvalidInput(format!(
                "reduced state (x={x}, y={y}, z={z}) must satisfy x > 0, x^2 - y^2 - z^2 > 0"
            )))
        }
    }

    pub fn from_quadratic(q: &Quadratic<T>) -> Self {
        Self {
            x: q.a().clone() + q.c().clone(),
            y: q.b().clone(),
            z: q.a().clone() - q.c().clone(),
        }
    }

    /// Inverse of [`Self::from_quadratic`]: (a, c) = ((x + z)/2, (x − z)/2).
    pub fn to_quadratic(&self) -> Quadratic<T> {
        let two = int::<T>(2);
        Quadratic::new_unchecked(
            (self.x.clone() + self.z.clone()) / two.clone(),
            self.y.clone(),
            (self.x.clone() - self.z.clone()) / two,
        )
    }

    pub fn x(&self) -> &T {
        &self.x
    }

    pub fn y(&self) -> &T {
        &self.y
    }

    pub fn z(&self) -> &T {
        &self.z
    }

    fn disc(x: &T, y: &T, z: &T) -> T {
        x.clone() * x.clone() - y.clone() * y.clone() - z.clone() * z.clone()
    }

    /// The conserved quantity x² − y² − z² (= 4ac − b²).
    pub fn discriminant(&self) -> T {
        Self::disc(&self.x, &self.y, &self.z)
    }

    /// One step of the reduced system. Conjugate to
    /// [`Quadratic::landen_step`]: stepping here commutes with the change of
    /// variables exactly.
    pub fn step(&self) -> Self {
        let (x, y, z) = (self.x.clone(), self.y.clone(), self.z.clone());
        let three = int::<T>(3);
        let four = int::<T>(4);
        let x_sq = x.clone() * x.clone();
        let y_sq = y.clone() * y.clone();
        let z_sq = z.clone() * z.clone();
        let denom = four.clone() * x_sq.clone() - y_sq.clone() - z_sq.clone();

        let x1 = x * (four * x_sq - three.clone() * z_sq.clone() - three.clone() * y_sq.clone())
            / denom.clone();
        let z1 = z * (z_sq.clone() - three.clone() * y_sq.clone()) / denom.clone();
        let y1 = y * (three * z_sq - y_sq) / denom;
        Self {
            x: x1,
            y: y1,
            z: z1,
        }
    }
}

/// One step of the collapsed scalar iteration x ↦ x(x² + 3w²)/(3x² + w²),
/// where w² is the conserved discriminant. Fixed point: x = w.
pub fn collapsed_step<T: Scalar>(x: T, w: T) -> T {
    let three = int::<T>(3);
    let x_sq = x.clone() * x.clone();
    let w_sq = w.clone() * w;
    x * (x_sq.clone() + three.clone() * w_sq.clone()) / (three * x_sq + w_sq)
}

/// Derived quantities governing the closed-form solution: w = √(4ac − b²),
/// d = (a + c)/w ≥ 1, and t = coth⁻¹(d) ∈ (0, ∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceParams<T> {
    w: T,
    d: T,
    t: T,
}

impl<T: FloatScalar> ConvergenceParams<T> {
    /// Returns `None` at the fixed point (d = 1, where t would be infinite):
    /// the iteration is already converged and has no finite parametrization.
    pub fn from_quadratic(q: &Quadratic<T>) -> Option<Self> {
        let w = q.discriminant().sqrt();
        let d = (*q.a() + *q.c()) / w;
        if d <= T::one() {
            return None;
        }
        // coth⁻¹(d) = atanh(1/d), stable for d barely above 1 and for huge d
        let t = (T::one() / d).atanh();
        Some(Self { w, d, t })
    }

    pub fn w(&self) -> T {
        self.w
    }

    pub fn d(&self) -> T {
        self.d
    }

    pub fn t(&self) -> T {
        self.t
    }

    /// Closed form of the collapsed iterate: xₙ = w·coth(3ⁿt). Once 2t·3ⁿ
    /// overflows the exponent range the mathematically correct limit w is
    /// returned.
    pub fn closed_form_x(&self, n: u32) -> T {
        let growth = self.exponent(n).exp();
        if !growth.is_finite() {
            return self.w;
        }
        // ratio first: w·(growth + 1) can overflow while the quotient cannot
        self.w * ((growth + T::one()) / (growth - T::one()))
    }

    /// Exact relative error |xₙ/w − 1| = 2/(e^{2t·3ⁿ} − 1); 0 once the
    /// exponential overflows.
    pub fn error_bound(&self, n: u32) -> T {
        let growth = self.exponent(n).exp();
        if !growth.is_finite() {
            return T::zero();
        }
        int::<T>(2) / (growth - T::one())
    }

    fn exponent(&self, n: u32) -> T {
        int::<T>(2) * self.t * int::<T>(3).powi(n as i32)
    }
}

/// Admission window for residual pairs in rate estimation, relative to the
/// orbit's natural scale.
///
/// Pairs above the ceiling are pre-asymptotic (the local contraction
/// constant is still drifting); pairs below the floor are dominated by the
/// backend's noise. Hardware-float traces of a cubically convergent
/// iteration keep only two or three clean pairs before rounding noise takes
/// over, so exact-rational traces are the right instrument when a sharp
/// estimate is needed — their window reaches down to the f64 underflow
/// threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderWindow {
    /// Largest admissible residual/scale ratio.
    pub ceiling_rel: f64,
    /// Smallest admissible residual/scale ratio.
    pub floor_rel: f64,
}

impl OrderWindow {
    /// Window for residuals measured in hardware floats.
    pub fn float_trace() -> Self {
        Self {
            ceiling_rel: 0.7,
            floor_rel: 1e-12,
        }
    }

    /// Window for residuals computed exactly and converted for the fit.
    pub fn exact_trace() -> Self {
        Self {
            ceiling_rel: 0.2,
            floor_rel: 1e-250,
        }
    }
}

/// Least-squares slope of log rₙ₊₁ against log rₙ over the admissible pairs:
/// the empirical convergence order of the residual sequence.
///
/// `scale` sets the unit in which the window is applied (the orbit limit for
/// mean iterations, √discriminant for the quadratic map).
pub fn convergence_order_from_residuals(
    residuals: &[f64],
    scale: f64,
    window: OrderWindow,
) -> Result<f64> {
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "scale must be positive, got {scale}"
        )));
    }
    let mut points = Vec::new();
    for pair in residuals.windows(2) {
        let (r0, r1) = (pair[0] / scale, pair[1] / scale);
        if r0 <= 0.0 || r1 <= 0.0 {
            continue;
        }
        if r0 > window.ceiling_rel || r0 < window.floor_rel || r1 < window.floor_rel {
            continue;
        }
        points.push((pair[0].ln(), pair[1].ln()));
    }
    if points.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "{} usable residual pair(s), need at least 2",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(
            "residuals are constant, slope undefined".into(),
        ));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    Ok(sxy / sxx)
}

/// Convergence order of a quadratic iteration trace, using √(4a₀c₀ − b₀²)
/// as the scale. Expect ≈ 3.
pub fn convergence_order<T: Scalar>(trace: &IterationTrace<T>, window: OrderWindow) -> Result<f64> {
    if trace.rows().len() < 3 {
        return Err(Error::InsufficientData(format!(
            "trace has {} rows, need at least 3",
            trace.rows().len()
        )));
    }
    let disc = trace.rows()[0]
        .state
        .discriminant()
        .to_f64()
        .unwrap_or(f64::NAN);
    convergence_order_from_residuals(&trace.residuals_f64(), disc.sqrt(), window)
}

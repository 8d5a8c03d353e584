//! The parameter iteration for sextic denominators x⁶ + ax⁴ + bx² + 1.
//!
//! The same invariance mechanism as in [`crate::quad`] applies to even
//! sextic integrands; for the denominator parameters the update is
//!
//! ```text
//! a₁ = (ab + 5a + 5b + 9)/(a + b + 2)^{4/3}
//! b₁ = (a + b + 6)/(a + b + 2)^{2/3}
//! ```
//!
//! which converges to the fixed point (3, 3) — exactly the triple
//! (1, 3, 3, 1) of binomial coefficients, i.e. the denominator (x² + 1)³ —
//! precisely when the underlying half-line integral is finite. Only the
//! denominator system is treated here; the companion numerator parameters
//! follow different rules that are out of scope.

use crate::error::{Error, Result};
use crate::scalar::{int, FloatScalar};

/// Parameters (a, b) of the sextic denominator x⁶ + ax⁴ + bx² + 1.
///
/// a + b + 2 > 0 is required for the fractional powers of the update to be
/// real; bases that would go nonpositive are rejected rather than pushed
/// through a complex branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degree6Denominator<T> {
    a: T,
    b: T,
}

impl<T: FloatScalar> Degree6Denominator<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if a + b + int::<T>(2) > T::zero() {
            Ok(Self { a, b })
        } else {
            Err(Error::InvalidInput(format!(
                "sextic parameters ({a}, {b}) must satisfy a + b + 2 > 0"
            )))
        }
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// |a − 3| + |b − 3|, distance from the fixed point.
    pub fn residual(&self) -> T {
        let three = int::<T>(3);
        (self.a - three).abs() + (self.b - three).abs()
    }

    /// One parameter update. The cube root is taken once and raised to
    /// integer powers, so a perfect-cube base (like 8 at the fixed point)
    /// stays exact. Errors when the image leaves the a + b + 2 > 0 region,
    /// which happens only for initial data whose integral diverges.
    pub fn step(&self) -> Result<Self> {
        let (a, b) = (self.a, self.b);
        let root = (a + b + int::<T>(2)).cbrt();
        let five = int::<T>(5);
        let a1 = (a * b + five * a + five * b + int::<T>(9)) / root.powi(4);
        let b1 = (a + b + int::<T>(6)) / root.powi(2);
        Self::new(a1, b1)
    }

    /// Iterates until |a − 3| + |b − 3| ≤ tol, or `max_iter` steps.
    pub fn iterate(&self, tol: T, max_iter: usize) -> Result<Degree6Run<T>> {
        if tol <= T::zero() {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        let mut rows = vec![Degree6Row::from_state(0, *self)];
        let mut state = *self;
        let mut converged = state.residual() <= tol;
        for index in 1..=max_iter {
            if converged {
                break;
            }
            state = state.step()?;
            rows.push(Degree6Row::from_state(index, state));
            converged = state.residual() <= tol;
        }
        Ok(Degree6Run { converged, rows })
    }

    /// Whether x⁶ + ax⁴ + bx² + 1 > 0 for every real x — the finiteness
    /// criterion for the underlying integral, hence for convergence of the
    /// iteration.
    ///
    /// In u = x² the question is positivity of p(u) = u³ + au² + bu + 1 on
    /// [0, ∞). Since p(0) = 1 and p → ∞, it suffices to check p at the
    /// positive critical points (roots of 3u² + 2au + b).
    pub fn denominator_positive(&self) -> bool {
        let (a, b) = (self.a, self.b);
        let p = |u: T| ((u + a) * u + b) * u + T::one();
        let quarter_disc = a * a - int::<T>(3) * b;
        if quarter_disc < T::zero() {
            return true; // no real critical points: p is increasing
        }
        let sqrt_disc = quarter_disc.sqrt();
        let three = int::<T>(3);
        for critical in [(-a - sqrt_disc) / three, (-a + sqrt_disc) / three] {
            if critical > T::zero() && p(critical) <= T::zero() {
                return false;
            }
        }
        true
    }
}

/// One recorded state of the sextic parameter iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degree6Row<T> {
    pub index: usize,
    pub a: T,
    pub b: T,
    pub residual: T,
}

impl<T: FloatScalar> Degree6Row<T> {
    fn from_state(index: usize, state: Degree6Denominator<T>) -> Self {
        Self {
            index,
            a: state.a,
            b: state.b,
            residual: state.residual(),
        }
    }
}

/// Outcome of [`Degree6Denominator::iterate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Degree6Run<T> {
    pub converged: bool,
    pub rows: Vec<Degree6Row<T>>,
}

impl<T: FloatScalar> Degree6Run<T> {
    /// Residual column as `f64`, for rate diagnostics.
    pub fn residuals_f64(&self) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.residual.to_f64().unwrap_or(0.0))
            .collect()
    }
}

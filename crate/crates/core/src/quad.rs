//! The quadratic coefficient transformation and its fixed-point iteration.
//!
//! The integral of 1/(ax² + bx + c) over the whole line is left unchanged
//! when the coefficient triple (a, b, c) is replaced by
//!
//! ```text
//! a₁ = a·[(a + 3c)² − 3b²] / D
//! b₁ = b·[3(a − c)² − b²] / D      D = (3a + c)(a + 3c) − b²
//! c₁ = c·[(3a + c)² − 3b²] / D
//! ```
//!
//! Iterating drives the triple to (w/2, 0, w/2) with w = √(4ac − b²), at a
//! cubic rate, so the integral can be read off as π divided by the limit of
//! the leading coefficient. The map is rational in (a, b, c); over an exact
//! rational backend the conserved discriminant 4ac − b² stays conserved
//! *exactly*, which is how the library certifies it.

use crate::error::{Error, Result};
use crate::scalar::{int, FloatScalar, Scalar};

/// Stopping tolerance used when callers do not supply one.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Step budget used when callers do not supply one. Cubic convergence needs
/// at most about six steps to reach double precision from any valid start;
/// the margin covers extreme inputs.
pub const DEFAULT_MAX_ITER: usize = 30;

/// Coefficients (a, b, c) of a positive-definite quadratic ax² + bx + c.
///
/// Validity requires a > 0, c > 0 and 4ac − b² > 0, which is exactly the
/// condition for ∫ dx/(ax² + bx + c) over ℝ to converge. The transformation
/// maps this region into itself, so stepping never needs revalidation.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic<T> {
    a: T,
    b: T,
    c: T,
}

impl<T: Scalar> Quadratic<T> {
    /// Validates the convergence condition and builds the triple.
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let zero = T::zero();
        let valid = a > zero
            && c > zero
            && int::<T>(4) * a.clone() * c.clone() - b.clone() * b.clone() > zero;
        if !valid {
            return Err(Error::InvalidInput(format!(
                "quadratic (a={a}, b={b}, c={c}) must satisfy a > 0, c > 0, 4ac - b^2 > 0"
            )));
        }
        Ok(Self { a, b, c })
    }

    pub(crate) fn new_unchecked(a: T, b: T, c: T) -> Self {
        Self { a, b, c }
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    /// The conserved quantity 4ac − b².
    pub fn discriminant(&self) -> T {
        int::<T>(4) * self.a.clone() * self.c.clone() - self.b.clone() * self.b.clone()
    }

    /// Distance from the fixed-point set {b = 0, a = c}, measured as
    /// |b| + |a − c|. Vanishes exactly at a fixed point.
    pub fn residual(&self) -> T {
        self.b.abs() + (self.a.clone() - self.c.clone()).abs()
    }

    /// One application of the coefficient transformation.
    ///
    /// The shared denominator D = (3a + c)(a + 3c) − b² is positive whenever
    /// the input is valid, and the image is valid again, so the result needs
    /// no revalidation.
    pub fn landen_step(&self) -> Self {
        let three = int::<T>(3);
        let a3c = self.a.clone() + three.clone() * self.c.clone();
        let c3a = three.clone() * self.a.clone() + self.c.clone();
        let b_sq = self.b.clone() * self.b.clone();
        let denom = c3a.clone() * a3c.clone() - b_sq.clone();
        let diff = self.a.clone() - self.c.clone();

        let a1 =
            self.a.clone() * (a3c.clone() * a3c - three.clone() * b_sq.clone()) / denom.clone();
        let b1 =
            self.b.clone() * (three.clone() * diff.clone() * diff - b_sq.clone()) / denom.clone();
        let c1 = self.c.clone() * (c3a.clone() * c3a - three * b_sq) / denom;
        Self::new_unchecked(a1, b1, c1)
    }

    /// Runs exactly `steps` applications of the map, recording every state.
    pub fn trace(&self, steps: usize) -> IterationTrace<T> {
        let mut trace = IterationTrace::new(self.clone());
        for _ in 0..steps {
            trace.push_step();
        }
        trace
    }

    /// Iterates until |b| + |a − c| ≤ `tol`, returning the final leading
    /// coefficient (the limit approximant) and the full trace.
    ///
    /// With cubic convergence, hitting `max_iter` indicates the budget was
    /// set far too small; the error reports the last residual.
    pub fn iterate(&self, tol: T, max_iter: usize) -> Result<(T, IterationTrace<T>)> {
        if tol <= T::zero() {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        if max_iter == 0 {
            return Err(Error::InvalidInput("max_iter must be at least 1".into()));
        }
        let mut trace = IterationTrace::new(self.clone());
        loop {
            let last = trace.last();
            if last.residual <= tol {
                return Ok((last.state.a.clone(), trace));
            }
            if trace.steps() == max_iter {
                return Err(Error::NoConvergence {
                    steps: max_iter,
                    residual: last.residual.to_string(),
                    tolerance: tol.to_string(),
                });
            }
            trace.push_step();
        }
    }
}

impl<T: FloatScalar> Quadratic<T> {
    /// Closed form of the line integral: 2π/√(4ac − b²). No iteration.
    pub fn integral_value(&self) -> T {
        (T::PI() + T::PI()) / self.discriminant().sqrt()
    }

    /// Evaluates the line integral as π over the iterated limit of the
    /// leading coefficient, stopping at `tol` with the default step budget.
    pub fn evaluate_by_iteration(&self, tol: T) -> Result<T> {
        let (limit, _) = self.iterate(tol, DEFAULT_MAX_ITER)?;
        Ok(T::PI() / limit)
    }
}

/// One recorded state of an iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow<T> {
    /// Step index, starting at 0 for the initial state.
    pub index: usize,
    pub state: Quadratic<T>,
    /// |b| + |a − c| of `state`.
    pub residual: T,
}

/// Ordered states of a quadratic iteration, indices consecutive from 0.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<T> {
    rows: Vec<TraceRow<T>>,
}

impl<T: Scalar> IterationTrace<T> {
    pub fn new(initial: Quadratic<T>) -> Self {
        let residual = initial.residual();
        Self {
            rows: vec![TraceRow {
                index: 0,
                state: initial,
                residual,
            }],
        }
    }

    fn push_step(&mut self) {
        let next = self.last().state.landen_step();
        let residual = next.residual();
        self.rows.push(TraceRow {
            index: self.rows.len(),
            state: next,
            residual,
        });
    }

    pub fn rows(&self) -> &[TraceRow<T>] {
        &self.rows
    }

    pub fn last(&self) -> &TraceRow<T> {
        self.rows
            .last()
            .expect("trace always holds the initial row")
    }

    /// Number of steps taken (one less than the number of rows).
    pub fn steps(&self) -> usize {
        self.rows.len() - 1
    }

    /// Residual column converted to `f64`, for rate diagnostics.
    pub fn residuals_f64(&self) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| row.residual.to_f64().unwrap_or(0.0))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rat_quad(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Quadratic<BigRational> {
        Quadratic::new(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1)).unwrap()
    }

    #[test]
    fn rejects_divergent_integrals() {
        // real roots: 4ac - b^2 < 0
        assert!(Quadratic::new(1.0, 3.0, 1.0).is_err());
        // boundary case 4ac = b^2
        assert!(Quadratic::new(1.0, 2.0, 1.0).is_err());
        // nonpositive leading coefficients
        assert!(Quadratic::new(-1.0, 0.0, 1.0).is_err());
        assert!(Quadratic::new(1.0, 0.0, 0.0).is_err());
        // NaN never validates
        assert!(Quadratic::new(f64::NAN, 0.0, 1.0).is_err());
    }

    #[test]
    fn step_from_table_start_is_exact_in_rational_mode() {
        let q = rat_quad((4, 1), (3, 1), (1, 1));
        let next = q.landen_step();
        assert_eq!(next.a(), &rat(44, 41));
        assert_eq!(next.b(), &rat(27, 41));
        assert_eq!(next.c(), &rat(71, 41));
    }

    #[test]
    fn discriminant_is_conserved_exactly() {
        let q = rat_quad((4, 1), (3, 1), (1, 1));
        assert_eq!(q.discriminant(), rat(7, 1));
        let next = q.landen_step();
        // 4·(44/41)·(71/41) − (27/41)² = 11767/1681 = 7
        assert_eq!(next.discriminant(), rat(7, 1));
    }

    #[test]
    fn fixed_point_stays_fixed() {
        let q = Quadratic::new(1.0, 0.0, 1.0).unwrap();
        let next = q.landen_step();
        assert_eq!(next, q);
        assert_eq!(q.residual(), 0.0);
    }

    #[test]
    fn iterate_converges_to_half_sqrt_discriminant() {
        let q = Quadratic::new(4.0, 3.0, 1.0).unwrap();
        let (limit, trace) = q.iterate(1e-10, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(trace.steps(), 4);
        assert!((limit - 7f64.sqrt() / 2.0).abs() < 1e-10);

        let q = Quadratic::new(1.0, 1.0, 1.0).unwrap();
        let (limit, _) = q.iterate(1e-12, DEFAULT_MAX_ITER).unwrap();
        assert!((limit - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn iterate_at_fixed_point_takes_no_steps() {
        let q = Quadratic::new(1.0, 0.0, 1.0).unwrap();
        let (limit, trace) = q.iterate(1e-300, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(limit, 1.0);
        assert_eq!(trace.steps(), 0);
    }

    #[test]
    fn iterate_rejects_bad_budgets() {
        let q = Quadratic::new(4.0, 3.0, 1.0).unwrap();
        assert!(matches!(q.iterate(0.0, 10), Err(Error::InvalidInput(_))));
        assert!(matches!(q.iterate(1e-10, 0), Err(Error::InvalidInput(_))));
        assert!(matches!(
            q.iterate(1e-10, 1),
            Err(Error::NoConvergence { steps: 1, .. })
        ));
    }

    #[test]
    fn closed_form_integral_values() {
        let q = Quadratic::new(1.0, 0.0, 1.0).unwrap();
        assert!((q.integral_value() - std::f64::consts::PI).abs() < 1e-15);
        let q = Quadratic::new(2.0, 2.0, 2.0).unwrap();
        assert!((q.integral_value() - std::f64::consts::PI / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn iterated_evaluation_matches_closed_form() {
        let q: Quadratic<f64> = Quadratic::new(4.0, 3.0, 1.0).unwrap();
        let by_iter = q.evaluate_by_iteration(1e-10).unwrap();
        assert!((by_iter - q.integral_value()).abs() < 1e-10);
        assert!((by_iter - 2.0 * std::f64::consts::PI / 7f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn residual_decreases_monotonically_after_first_step() {
        let q = Quadratic::new(3.0, 1.0, 5.0).unwrap();
        let trace = q.trace(6);
        let rs = trace.residuals_f64();
        for pair in rs[1..].windows(2) {
            assert!(pair[1] <= pair[0], "residuals {pair:?} increased");
        }
    }

    #[test]
    fn single_precision_instantiation_works() {
        let q: Quadratic<f32> = Quadratic::new(4.0f32, 3.0, 1.0).unwrap();
        let (limit, _) = q.iterate(1e-5f32, 30).unwrap();
        assert!((limit - 7f32.sqrt() / 2.0).abs() < 1e-5);
        assert!((q.integral_value() - 2.0 * std::f32::consts::PI / 7f32.sqrt()).abs() < 1e-5);
    }
}

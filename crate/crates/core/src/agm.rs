//! The arithmetic-geometric mean and the elliptic integral it evaluates.
//!
//! For positive a, b the coupled iteration (a, b) ↦ ((a + b)/2, √(ab))
//! converges quadratically to a common limit AGM(a, b), and the integral
//!
//! ```text
//! G(a, b) = ∫₀^{π/2} dθ/√(a²cos²θ + b²sin²θ)
//! ```
//!
//! is invariant under that replacement, so G(a, b) = π/(2·AGM(a, b)). The
//! same invariance-of-an-integral-under-a-parameter-map mechanism drives the
//! quadratic transformation in [`crate::quad`]; this module is the classical
//! prototype, including the numerical coincidence between 1/AGM(1, √2) and
//! the lemniscate arc-length integral that started the subject.

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureResult};
use crate::scalar::{int, real, FloatScalar};

/// A pair of positive reals under the mean iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgmPair<T> {
    a: T,
    b: T,
}

impl<T: FloatScalar> AgmPair<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if a > T::zero() && b > T::zero() {
            Ok(Self { a, b })
        } else {
            Err(Error::InvalidInput(format!(
                "mean iteration requires positive entries, got ({a}, {b})"
            )))
        }
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// |a − b|, the gap the iteration closes.
    pub fn gap(&self) -> T {
        (self.a - self.b).abs()
    }

    /// One mean step: ((a + b)/2, √(ab)). The arithmetic mean dominates the
    /// geometric one, so the output is ordered a ≥ b whatever the input
    /// order was.
    pub fn step(&self) -> Self {
        Self {
            a: (self.a + self.b) / int::<T>(2),
            b: (self.a * self.b).sqrt(),
        }
    }

    /// Iterates until |a − b| ≤ tol and returns the common limit
    /// approximant. Always converges for positive inputs.
    ///
    /// The gap can stick one rounding unit above zero, so tolerances below
    /// the representable floor saturate there after the step cap.
    pub fn agm(&self, tol: T) -> T {
        assert!(tol > T::zero(), "tolerance must be positive");
        let mut pair = *self;
        for _ in 0..64 {
            if pair.gap() <= tol {
                break;
            }
            pair = pair.step();
        }
        pair.a
    }

    /// The limit resolved to machine precision (gap below 4ε relative).
    pub fn agm_machine(&self) -> T {
        let mut pair = *self;
        let eps = T::epsilon() * int::<T>(4);
        // 64 steps is far beyond what quadratic convergence ever needs
        for _ in 0..64 {
            if pair.gap() <= eps * pair.a.abs() {
                break;
            }
            pair = pair.step();
        }
        pair.a
    }

    /// The states visited in `steps` iterations, initial pair included.
    pub fn trace(&self, steps: usize) -> Vec<Self> {
        let mut rows = Vec::with_capacity(steps + 1);
        rows.push(*self);
        for _ in 0..steps {
            rows.push(rows.last().expect("nonempty").step());
        }
        rows
    }

    /// Gap sequence |aₙ − bₙ| of [`Self::trace`], for rate estimation.
    pub fn gap_residuals(&self, steps: usize) -> Vec<f64> {
        self.trace(steps)
            .iter()
            .map(|p| p.gap().to_f64().unwrap_or(0.0))
            .collect()
    }
}

/// G(a, b) evaluated through the mean iteration: π/(2·AGM(a, b)).
pub fn elliptic_g<T: FloatScalar>(a: T, b: T) -> Result<T> {
    let pair = AgmPair::new(a, b)?;
    Ok(T::FRAC_PI_2() / pair.agm_machine())
}

/// Parameters a > b > 0 of the elliptic value, carrying the modulus
/// k = √(1 − b²/a²) ∈ (0, 1) that links G to the standard complete
/// integral of the first kind: G(a, b) = K(k)/a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams<T> {
    a: T,
    b: T,
    k: T,
}

impl<T: FloatScalar> EllipticParams<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(b > T::zero() && a > b) {
            return Err(Error::InvalidInput(format!(
                "elliptic parameters require 0 < b < a, got ({a}, {b})"
            )));
        }
        let ratio = b / a;
        Ok(Self {
            a,
            b,
            k: (T::one() - ratio * ratio).sqrt(),
        })
    }

    pub fn modulus(&self) -> T {
        self.k
    }

    /// G(a, b) via the mean iteration.
    pub fn g(&self) -> T {
        T::FRAC_PI_2()
            / AgmPair {
                a: self.a,
                b: self.b,
            }
            .agm_machine()
    }

    /// K(k) obtained through the relation G(a, b) = K(k)/a; there is no
    /// second evaluation path for K here.
    pub fn complete_first_kind(&self) -> T {
        self.a * self.g()
    }
}

/// The two sides of the lemniscate coincidence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemniscateCheck<T> {
    /// 1/AGM(1, √2), from the mean iteration alone.
    pub agm_value: T,
    /// (2/π)·∫₀¹ dx/√(1 − x⁴), from quadrature alone.
    pub integral_value: T,
}

impl<T: FloatScalar> LemniscateCheck<T> {
    pub fn difference(&self) -> T {
        (self.agm_value - self.integral_value).abs()
    }
}

/// Computes both lemniscate values independently with the default quadrature
/// tolerance. They agree to better than eleven decimal places.
pub fn lemniscate_check<T: FloatScalar>() -> Result<LemniscateCheck<T>> {
    lemniscate_check_with(real::<T>(1e-12))
}

/// [`lemniscate_check`] with an explicit quadrature tolerance.
///
/// The arc-length integrand 1/√(1 − x⁴) has an endpoint singularity at
/// x = 1; the substitution x = cos φ turns it into 1/√(1 + cos²φ) on
/// [0, π/2], bounded between 1/√2 and 1, before quadrature sees it.
pub fn lemniscate_check_with<T: FloatScalar>(tol: T) -> Result<LemniscateCheck<T>> {
    let agm_value = T::one()
        / AgmPair::new(T::one(), int::<T>(2).sqrt())
            .expect("constants are positive")
            .agm_machine();
    let integrand = |phi: T| {
        let cos = phi.cos();
        T::one() / (T::one() + cos * cos).sqrt()
    };
    let QuadratureResult { value, .. } =
        quadrature::adaptive(&integrand, T::zero(), T::FRAC_PI_2(), tol)?;
    Ok(LemniscateCheck {
        agm_value,
        integral_value: value / T::FRAC_PI_2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_orders_and_contracts() {
        let p = AgmPair::new(1.0, 2f64.sqrt()).unwrap();
        let next = p.step();
        assert!((next.a() - 1.2071067811865475).abs() < 1e-15);
        assert!((next.b() - 1.189207115002721).abs() < 1e-15);
        assert!(next.a() >= next.b());

        // ordering holds regardless of input order
        let swapped = AgmPair::new(2f64.sqrt(), 1.0).unwrap().step();
        assert_eq!(swapped, next);

        let fixed = AgmPair::new(1.0, 1.0).unwrap();
        assert_eq!(fixed.step(), fixed);
    }

    #[test]
    fn rejects_nonpositive_entries() {
        assert!(AgmPair::new(0.0, 1.0).is_err());
        assert!(AgmPair::new(1.0, -2.0).is_err());
        assert!(AgmPair::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn limit_of_the_classical_pair() {
        let p = AgmPair::new(1.0, 2f64.sqrt()).unwrap();
        let m = p.agm(1e-14);
        assert!((m - 1.1981402347355922).abs() < 1e-14);
        assert!((1.0 / m - 0.8346268416740732).abs() < 1e-14);
        assert_eq!(AgmPair::new(1.0, 1.0).unwrap().agm(1e-14), 1.0);
        // symmetry of the two means
        let q = AgmPair::new(2f64.sqrt(), 1.0).unwrap();
        assert_eq!(p.agm_machine(), q.agm_machine());
    }

    #[test]
    fn sandwich_after_the_first_step() {
        let trace = AgmPair::new(9.0, 0.25).unwrap().trace(8);
        for pair in trace[1..].windows(2) {
            assert!(pair[0].b() <= pair[1].b());
            assert!(pair[1].b() <= pair[1].a());
            assert!(pair[1].a() <= pair[0].a());
        }
    }

    #[test]
    fn elliptic_value_and_invariance() {
        let g = elliptic_g(1.0, 0.5f64.sqrt()).unwrap();
        assert!((g - 1.8540746773013719).abs() < 1e-14);

        // a = b: constant integrand, G = π/(2a)
        let g: f64 = elliptic_g(3.0, 3.0).unwrap();
        assert!((g - std::f64::consts::PI / 6.0).abs() < 1e-15);

        // invariance under the mean step
        let (a, b) = (2.0f64, 0.7);
        let lhs = elliptic_g(a, b).unwrap();
        let rhs = elliptic_g((a + b) / 2.0, (a * b).sqrt()).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn homogeneity() {
        let m: f64 = AgmPair::new(3.0, 1.0).unwrap().agm_machine();
        let scaled = AgmPair::new(7.5, 2.5).unwrap().agm_machine();
        assert!((scaled - 2.5 * m).abs() < 1e-14 * scaled);
    }

    #[test]
    fn modulus_and_first_kind_relation() {
        let p = EllipticParams::new(1.0, 0.5f64.sqrt()).unwrap();
        assert!((p.modulus() - 0.5f64.sqrt()).abs() < 1e-15);
        // K(1/√2) through G: reference value of the (1, 1/√2) integral
        assert!((p.complete_first_kind() - 1.8540746773013719).abs() < 1e-14);
        assert!(EllipticParams::new(1.0, 1.0).is_err());
        assert!(EllipticParams::new(0.5, 1.0).is_err());
    }

    #[test]
    fn lemniscate_values_agree() {
        let check = lemniscate_check::<f64>().unwrap();
        assert!((check.agm_value - 0.8346268416740732).abs() < 1e-13);
        assert!((check.integral_value - 0.8346268416740732).abs() < 1e-12);
        assert!(check.difference() < 5e-12);
    }
}

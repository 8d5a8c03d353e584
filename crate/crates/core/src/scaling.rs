//! The algebraic scaling that generates the quadratic transformation.
//!
//! Multiplying numerator and denominator of 1/(ax² + bx + c) by a chosen
//! quartic z₀x⁴ + z₁x³ + z₂x² + z₃x + z₄ rewrites the product denominator as
//! e₀U²(x) + e₁U(x)V(x) + e₂V²(x) with U(x) = x³ − 3x and V(x) = 3x² − 1,
//! the numerator/denominator pair of the tangent triple-angle formula. The
//! closed forms for the eight coefficients are
//!
//! ```text
//! z₀ = (a + 3c)² − 3b²          e₀ = a·[(a + 3c)² − 3b²]
//! z₁ = 8b(a − 3c)               e₁ = b·[3(a − c)² − b²]
//! z₂ = −6a² + 10b² + 44ac − 6c² e₂ = c·[(3a + c)² − 3b²]
//! z₃ = 8b(c − 3a)
//! z₄ = (3a + c)² − 3b²
//! ```
//!
//! Normalizing (8e₀, 8e₁, 8e₂) by 3z₄ + z₂ + 3z₀ = 8[(3a + c)(a + 3c) − b²]
//! reproduces the coefficient map of [`crate::quad`] exactly — the identity
//! that makes the integral invariance work. Both sides of the polynomial
//! identity have degree 6, so agreement at 7 distinct points proves it; in
//! exact rational mode the residual is literally zero.

use crate::quad::Quadratic;
use crate::scalar::{int, Scalar};

/// U(x) = x³ − 3x, the numerator polynomial of tan(3θ) in tan θ.
pub fn u_poly<T: Scalar>(x: T) -> T {
    x.clone() * x.clone() * x.clone() - int::<T>(3) * x
}

/// V(x) = 3x² − 1, the denominator polynomial of tan(3θ) in tan θ.
pub fn v_poly<T: Scalar>(x: T) -> T {
    int::<T>(3) * x.clone() * x - T::one()
}

/// The eight scaling coefficients attached to a quadratic.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCoefficients<T> {
    pub z0: T,
    pub z1: T,
    pub z2: T,
    pub z3: T,
    pub z4: T,
    pub e0: T,
    pub e1: T,
    pub e2: T,
}

impl<T: Scalar> ScalingCoefficients<T> {
    /// Evaluates the closed forms for the generating quadratic.
    pub fn from_quadratic(q: &Quadratic<T>) -> Self {
        let (a, b, c) = (q.a().clone(), q.b().clone(), q.c().clone());
        let three = int::<T>(3);
        let eight = int::<T>(8);
        let b_sq = b.clone() * b.clone();
        let a3c = a.clone() + three.clone() * c.clone();
        let c3a = three.clone() * a.clone() + c.clone();
        let diff = a.clone() - c.clone();

        let z0 = a3c.clone() * a3c - three.clone() * b_sq.clone();
        let z1 = eight.clone() * b.clone() * (a.clone() - three.clone() * c.clone());
        let z2 = int::<T>(-6) * a.clone() * a.clone()
            + int::<T>(10) * b_sq.clone()
            + int::<T>(44) * a.clone() * c.clone()
            - int::<T>(6) * c.clone() * c.clone();
        let z3 = eight * b.clone() * (c.clone() - three.clone() * a.clone());
        let z4 = c3a.clone() * c3a - three.clone() * b_sq.clone();

        let e0 = a * z0.clone();
        let e1 = b * (three * diff.clone() * diff - b_sq);
        let e2 = c * z4.clone();
        Self {
            z0,
            z1,
            z2,
            z3,
            z4,
            e0,
            e1,
            e2,
        }
    }

    /// The normalization constant 3z₄ + z₂ + 3z₀, always positive for a
    /// valid generating quadratic.
    pub fn normalizer(&self) -> T {
        let three = int::<T>(3);
        three.clone() * self.z4.clone() + self.z2.clone() + three * self.z0.clone()
    }

    /// The (e₀, e₁, e₂) triple, the denominator form of the scaled integrand.
    pub fn e_triple(&self) -> [T; 3] {
        [self.e0.clone(), self.e1.clone(), self.e2.clone()]
    }

    /// Evaluates the quartic multiplier z₀x⁴ + z₁x³ + z₂x² + z₃x + z₄.
    pub fn multiplier_at(&self, x: T) -> T {
        // Horner form
        (((self.z0.clone() * x.clone() + self.z1.clone()) * x.clone() + self.z2.clone())
            * x.clone()
            + self.z3.clone())
            * x
            + self.z4.clone()
    }
}

/// Maximum mismatch of the two degree-6 expansions over x ∈ {−3, …, 3}.
///
/// Agreement at those 7 points proves the polynomial identity, so this is
/// exactly zero over the rational backend; floats leave rounding residue
/// proportional to the coefficient magnitudes.
pub fn polynomial_identity_residual<T: Scalar>(q: &Quadratic<T>, s: &ScalingCoefficients<T>) -> T {
    let mut worst = T::zero();
    for i in -3..=3 {
        let x = int::<T>(i);
        let quadratic = (q.a().clone() * x.clone() + q.b().clone()) * x.clone() + q.c().clone();
        let lhs = quadratic * s.multiplier_at(x.clone());
        let u = u_poly(x.clone());
        let v = v_poly(x);
        let rhs = s.e0.clone() * u.clone() * u.clone()
            + s.e1.clone() * u * v.clone()
            + s.e2.clone() * v.clone() * v;
        let gap = (lhs - rhs).abs();
        if gap > worst {
            worst = gap;
        }
    }
    worst
}

/// The coefficient map computed through the scaling route:
/// (8e₀, 8e₁, 8e₂)/(3z₄ + z₂ + 3z₀). Equals [`Quadratic::landen_step`]
/// exactly — the two routes are algebraically identical.
pub fn step_via_scaling<T: Scalar>(q: &Quadratic<T>) -> Quadratic<T> {
    let s = ScalingCoefficients::from_quadratic(q);
    let n = s.normalizer();
    let eight = int::<T>(8);
    Quadratic::new_unchecked(
        eight.clone() * s.e0 / n.clone(),
        eight.clone() * s.e1 / n.clone(),
        eight * s.e2 / n,
    )
}

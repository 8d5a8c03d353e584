//! Independent numerical integration used to certify the invariance claims.
//!
//! Nothing here knows about the coefficient maps beyond their integrands, so
//! agreement between a quadrature value and a closed form (or between the
//! values before and after a transformation step) is genuine evidence, not
//! circular reasoning.
//!
//! The scheme is global-adaptive bisection driven by an embedded
//! Gauss(7)/Kronrod(15) pair: each interval carries the Kronrod value and
//! |K15 − G7| as its error estimate, and the interval with the largest
//! estimate is split until the summed estimate meets the absolute tolerance.
//! Line integrals are always compactified with x = tan θ before integration;
//! there is no truncated-infinite-interval fallback.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::quad::Quadratic;
use crate::scalar::{int, real, FloatScalar};

/// Absolute tolerance used by the verification suites unless overridden.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Hard cap on adaptive subdivisions per integral.
const MAX_INTERVALS: usize = 4096;

/// Kronrod abscissae for the 7/15 pair (positive half, descending).
#[allow(clippy::excessive_precision)]
const KRONROD_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// Kronrod weights matching [`KRONROD_NODES`].
#[allow(clippy::excessive_precision)]
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the embedded 7-point rule (odd-index Kronrod nodes).
#[allow(clippy::excessive_precision)]
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// A certified quadrature value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub evaluations: usize,
}

struct Interval<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

impl<T: FloatScalar> PartialEq for Interval<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<T: FloatScalar> Eq for Interval<T> {}

impl<T: FloatScalar> PartialOrd for Interval<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: FloatScalar> Ord for Interval<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// One Gauss-Kronrod 7/15 application on [lo, hi].
///
/// The reported error is |K15 − G7| scaled to the interval, floored at
/// 50ε·∫|f| so that rounding noise in the two sums is never passed off as
/// genuine accuracy.
fn gk15<T: FloatScalar, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> Interval<T> {
    let half = real::<T>(0.5);
    let center = half * (lo + hi);
    let half_width = half * (hi - lo);

    let f_center = f(center);
    let mut kronrod = real::<T>(KRONROD_WEIGHTS[7]) * f_center;
    let mut gauss = real::<T>(GAUSS_WEIGHTS[3]) * f_center;
    let mut resabs = real::<T>(KRONROD_WEIGHTS[7]) * f_center.abs();

    for (i, (&node, &weight)) in KRONROD_NODES[..7]
        .iter()
        .zip(&KRONROD_WEIGHTS[..7])
        .enumerate()
    {
        let offset = half_width * real::<T>(node);
        let (f_lo, f_hi) = (f(center - offset), f(center + offset));
        kronrod = kronrod + real::<T>(weight) * (f_lo + f_hi);
        resabs = resabs + real::<T>(weight) * (f_lo.abs() + f_hi.abs());
        if i % 2 == 1 {
            gauss = gauss + real::<T>(GAUSS_WEIGHTS[i / 2]) * (f_lo + f_hi);
        }
    }

    let rule_gap = ((kronrod - gauss) * half_width).abs();
    let round_off = real::<T>(50.0) * T::epsilon() * (resabs * half_width).abs();
    Interval {
        lo,
        hi,
        value: kronrod * half_width,
        error: rule_gap.max(round_off),
    }
}

/// Adaptively integrates `f` over [lo, hi] to absolute tolerance `tol`.
pub(crate) fn adaptive<T: FloatScalar, F: Fn(T) -> T>(
    f: &F,
    lo: T,
    hi: T,
    tol: T,
) -> Result<QuadratureResult<T>> {
    if !tol.is_finite() || tol <= T::zero() {
        return Err(Error::InvalidInput(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(gk15(f, lo, hi));
    let mut total_error = heap.peek().expect("seeded").error;

    while total_error > tol && heap.len() < MAX_INTERVALS {
        let worst = heap.pop().expect("heap is never empty");
        let mid = real::<T>(0.5) * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval width is at the floating-point floor; cannot refine
            heap.push(worst);
            break;
        }
        let left = gk15(f, worst.lo, mid);
        let right = gk15(f, mid, worst.hi);
        evaluations += 30;
        total_error = total_error - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
    }

    let intervals = heap.len();
    let mut value = T::zero();
    let mut error_estimate = T::zero();
    for interval in heap {
        value = value + interval.value;
        error_estimate = error_estimate + interval.error;
    }
    if error_estimate > tol {
        return Err(Error::ToleranceNotMet {
            estimate: error_estimate.to_string(),
            requested: tol.to_string(),
            intervals,
        });
    }
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
    })
}

/// ∫ dx/(ax² + bx + c) over ℝ, evaluated by quadrature after the
/// compactifying substitution x = tan θ. Expected value: 2π/√(4ac − b²).
pub fn integrate_rational_line<T: FloatScalar>(
    q: &Quadratic<T>,
    tol: T,
) -> Result<QuadratureResult<T>> {
    let (a, b, c) = (*q.a(), *q.b(), *q.c());
    let integrand = move |theta: T| {
        let x = theta.tan();
        let sec_sq = T::one() + x * x;
        sec_sq / ((a * x + b) * x + c)
    };
    adaptive(&integrand, -T::FRAC_PI_2(), T::FRAC_PI_2(), tol)
}

/// The same integral in its trigonometric form:
/// ∫ dθ/(a sin²θ + b sinθ cosθ + c cos²θ) over [−π/2, π/2].
pub fn integrate_trig_form<T: FloatScalar>(
    q: &Quadratic<T>,
    tol: T,
) -> Result<QuadratureResult<T>> {
    let (a, b, c) = (*q.a(), *q.b(), *q.c());
    let integrand = move |theta: T| {
        let (sin, cos) = theta.sin_cos();
        T::one() / (a * sin * sin + b * sin * cos + c * cos * cos)
    };
    adaptive(&integrand, -T::FRAC_PI_2(), T::FRAC_PI_2(), tol)
}

/// Validates that the (e₀, e₁, e₂) form has no real zero, so the S/C
/// integrands have no pole on the path.
fn check_e_form<T: FloatScalar>(e: &[T; 3]) -> Result<()> {
    let [e0, e1, e2] = *e;
    if e0 > T::zero() && e2 > T::zero() && int::<T>(4) * e0 * e2 - e1 * e1 > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "denominator form (e0={e0}, e1={e1}, e2={e2}) must be positive definite"
        )))
    }
}

fn triple_angle_denominator<T: FloatScalar>(e: &[T; 3], theta: T) -> T {
    let [e0, e1, e2] = *e;
    let (sin3, cos3) = (int::<T>(3) * theta).sin_cos();
    e0 * sin3 * sin3 + e1 * sin3 * cos3 + e2 * cos3 * cos3
}

/// Sₖ = ∫ sin(kθ)/(e₀sin²3θ + e₁sin3θ cos3θ + e₂cos²3θ) dθ over [−π/2, π/2],
/// for even k not divisible by 3 (k ∈ {2, 4}). Vanishes identically; the
/// quadrature value is the certification that it does.
pub fn s_integral<T: FloatScalar>(k: u32, e: &[T; 3], tol: T) -> Result<QuadratureResult<T>> {
    if !matches!(k, 2 | 4) {
        return Err(Error::InvalidInput(format!(
            "S_k is defined here for k in {{2, 4}}, got {k}"
        )));
    }
    check_e_form(e)?;
    let e = *e;
    let k_t = int::<T>(k as i32);
    let integrand = move |theta: T| (k_t * theta).sin() / triple_angle_denominator(&e, theta);
    adaptive(&integrand, -T::FRAC_PI_2(), T::FRAC_PI_2(), tol)
}

/// Cₖ, the cosine companion of [`s_integral`], for k ∈ {0, 2, 4}. C₂ and C₄
/// vanish; C₀ is the normalization integral with closed form
/// 2π/√(4e₀e₂ − e₁²).
pub fn c_integral<T: FloatScalar>(k: u32, e: &[T; 3], tol: T) -> Result<QuadratureResult<T>> {
    if !matches!(k, 0 | 2 | 4) {
        return Err(Error::InvalidInput(format!(
            "C_k is defined here for k in {{0, 2, 4}}, got {k}"
        )));
    }
    check_e_form(e)?;
    let e = *e;
    let k_t = int::<T>(k as i32);
    let integrand = move |theta: T| (k_t * theta).cos() / triple_angle_denominator(&e, theta);
    adaptive(&integrand, -T::FRAC_PI_2(), T::FRAC_PI_2(), tol)
}

/// ∫ dθ/√(a²cos²θ + b²sin²θ) over [0, π/2], the defining integral of the
/// elliptic value that the mean iteration reproduces as π/(2·AGM(a, b)).
pub fn integrate_elliptic_form<T: FloatScalar>(a: T, b: T, tol: T) -> Result<QuadratureResult<T>> {
    if !(a > T::zero() && b > T::zero()) {
        return Err(Error::InvalidInput(format!(
            "elliptic form requires positive parameters, got ({a}, {b})"
        )));
    }
    let integrand = move |theta: T| {
        let (sin, cos) = theta.sin_cos();
        T::one() / (a * a * cos * cos + b * b * sin * sin).sqrt()
    };
    adaptive(&integrand, T::zero(), T::FRAC_PI_2(), tol)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::scaling::ScalingCoefficients;

    #[test]
    fn smooth_reference_integrals() {
        let r = adaptive(&|x: f64| x * x, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-13);
        let r = adaptive(&|x: f64| x.sin(), 0.0, PI, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        assert!(r.error_estimate >= 0.0);
        assert!(r.evaluations >= 15);
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(matches!(
            adaptive(&|x: f64| x, 0.0, 1.0, 0.0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn line_integral_matches_closed_form() {
        let q = Quadratic::new(1.0, 0.0, 1.0).unwrap();
        let r = integrate_rational_line(&q, 1e-10).unwrap();
        assert!((r.value - PI).abs() < 1e-10);

        let q = Quadratic::new(4.0, 3.0, 1.0).unwrap();
        let r = integrate_rational_line(&q, 1e-10).unwrap();
        assert!((r.value - 2.0 * PI / 7f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn line_integral_is_invariant_under_the_step() {
        let q: Quadratic<f64> = Quadratic::new(4.0, 3.0, 1.0).unwrap();
        let before = integrate_rational_line(&q, 1e-10).unwrap();
        let after = integrate_rational_line(&q.landen_step(), 1e-10).unwrap();
        assert!((before.value - after.value).abs() < 2e-10);
    }

    #[test]
    fn trig_form_agrees_with_line_form() {
        for (a, b, c) in [(1.0f64, 0.0, 1.0), (4.0, 3.0, 1.0), (3.0, 1.0, 5.0)] {
            let q = Quadratic::new(a, b, c).unwrap();
            let line = integrate_rational_line(&q, 1e-10).unwrap();
            let trig = integrate_trig_form(&q, 1e-10).unwrap();
            assert!((line.value - trig.value).abs() < 2e-10);
        }
        // swapping a and c leaves the value unchanged
        let q: Quadratic<f64> = Quadratic::new(4.0, 3.0, 1.0).unwrap();
        let swapped = Quadratic::new(1.0, 3.0, 4.0).unwrap();
        let v1 = integrate_trig_form(&q, 1e-10).unwrap().value;
        let v2 = integrate_trig_form(&swapped, 1e-10).unwrap().value;
        assert!((v1 - v2).abs() < 2e-10);
    }

    #[test]
    fn vanishing_modes_from_table_start() {
        let q: Quadratic<f64> = Quadratic::new(4.0, 3.0, 1.0).unwrap();
        let e = ScalingCoefficients::from_quadratic(&q).e_triple();
        assert_eq!(e, [88.0, 54.0, 142.0]);
        for k in [2u32, 4] {
            let s = s_integral(k, &e, 1e-10).unwrap();
            assert!(s.value.abs() < 1e-10, "S_{k} = {}", s.value);
            let c = c_integral(k, &e, 1e-10).unwrap();
            assert!(c.value.abs() < 1e-10, "C_{k} = {}", c.value);
        }
    }

    #[test]
    fn normalization_mode_recovers_the_integral() {
        // N/16 · 2·C₀ must reproduce the original integral 2π/√7
        let q: Quadratic<f64> = Quadratic::new(4.0, 3.0, 1.0).unwrap();
        let s = ScalingCoefficients::from_quadratic(&q);
        let c0 = c_integral(0, &s.e_triple(), 1e-11).unwrap();
        let reassembled = s.normalizer() / 16.0 * 2.0 * c0.value;
        assert!((reassembled - 2.0 * PI / 7f64.sqrt()).abs() < 1e-9);
        // and C₀ itself has the closed form 2π/√(4e₀e₂ − e₁²)
        let disc: f64 = 4.0 * 88.0 * 142.0 - 54.0 * 54.0;
        assert!((c0.value - 2.0 * PI / disc.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn sc_integrals_reject_out_of_range_modes_and_bad_forms() {
        let e = [88.0, 54.0, 142.0];
        assert!(s_integral(0, &e, 1e-9).is_err());
        assert!(s_integral(3, &e, 1e-9).is_err());
        assert!(c_integral(1, &e, 1e-9).is_err());
        // indefinite form has a pole on the path
        assert!(matches!(
            s_integral(2, &[1.0, 5.0, 1.0], 1e-9),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn period_shift_identity() {
        // S_k over [−π/2, π/2] equals half the value over [0, 2π]
        let q: Quadratic<f64> = Quadratic::new(4.0, 3.0, 1.0).unwrap();
        let e = ScalingCoefficients::from_quadratic(&q).e_triple();
        for k in [2u32, 4] {
            let kf = k as f64;
            let integrand =
                move |theta: f64| (kf * theta).sin() / triple_angle_denominator(&e, theta);
            let half_range = s_integral(k, &e, 1e-11).unwrap().value;
            let full_range = adaptive(&integrand, 0.0, 2.0 * PI, 1e-11).unwrap().value;
            assert!(
                (half_range - 0.5 * full_range).abs() < 1e-9,
                "k = {k}: {half_range} vs {}",
                0.5 * full_range
            );
        }
    }

    #[test]
    fn elliptic_form_reference_value() {
        // value for (1, 1/√2) computed independently: 1.8540746773013719
        let r = integrate_elliptic_form(1.0, 0.5f64.sqrt(), 1e-11).unwrap();
        assert!((r.value - 1.8540746773013719).abs() < 1e-10);
        assert!(integrate_elliptic_form(0.0, 1.0, 1e-9).is_err());
    }

    #[test]
    fn unreachable_tolerance_is_reported() {
        // rounding noise in the error estimates floors near 1e-16·∫|f|,
        // so a 1e-18 request can never be certified
        let err = adaptive(&|x: f64| x.exp(), 0.0, 1.0, 1e-18);
        assert!(matches!(err, Err(Error::ToleranceNotMet { .. })));
    }
}

//! The `verify` subcommand: randomized suites for every conservation law
//! and identity the library claims.
//!
//! Exact-rational suites assert literal equality; float suites assert the
//! pinned numeric bounds. Sampling is seeded, so identical invocations
//! produce identical output.

use landen_core::convergence::{self, ConvergenceParams, ReducedState};
use landen_core::scaling::{self, ScalingCoefficients};
use landen_core::{agm, quadrature};
use landen_core::{BigRational, Quadratic};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Float drift allowed in one conservation-law step.
const DRIFT_BOUND: f64 = 1e-13;
/// Quadrature tolerance for the invariance oracle.
const ORACLE_TOL: f64 = quadrature::DEFAULT_TOL;
/// Bound on the vanishing Fourier modes.
const VANISHING_BOUND: f64 = 1e-9;
/// Residual allowed for the mean-iteration invariance.
const GAUSS_BOUND: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Discriminant,
    Identity,
    Vanishing,
    Gauss,
    Conjugacy,
    Invariance,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
}

impl SuiteReport {
    fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn run(suite: Suite, samples: Option<usize>, seed: u64) -> Vec<SuiteReport> {
    let mut reports = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Discriminant) {
        reports.push(discriminant(samples.unwrap_or(1000), seed));
    }
    if wants(Suite::Identity) {
        reports.push(identity(samples.unwrap_or(1000), seed));
    }
    if wants(Suite::Vanishing) {
        reports.push(vanishing(samples.unwrap_or(50), seed));
    }
    if wants(Suite::Gauss) {
        reports.push(gauss(samples.unwrap_or(100), seed));
    }
    if wants(Suite::Conjugacy) {
        reports.push(conjugacy(samples.unwrap_or(1000), seed));
    }
    if wants(Suite::Invariance) {
        reports.push(invariance(samples.unwrap_or(200), seed));
    }
    reports
}

pub fn random_float_quadratic(rng: &mut ChaCha8Rng) -> Quadratic<f64> {
    let a: f64 = rng.gen_range(0.01..=10.0);
    let c: f64 = rng.gen_range(0.01..=10.0);
    let s: f64 = rng.gen_range(-0.97..0.97);
    let b = s * 2.0 * (a * c).sqrt();
    Quadratic::new(a, b, c).expect("sampled inside the valid region")
}

pub fn random_rational_quadratic(rng: &mut ChaCha8Rng) -> Quadratic<BigRational> {
    loop {
        let a = BigRational::new(
            rng.gen_range(1i64..=40).into(),
            rng.gen_range(1i64..=8).into(),
        );
        let c = BigRational::new(
            rng.gen_range(1i64..=40).into(),
            rng.gen_range(1i64..=8).into(),
        );
        let b = BigRational::new(rng.gen_range(-320i64..=320).into(), 8.into());
        if let Ok(q) = Quadratic::new(a, b, c) {
            return q;
        }
    }
}

/// 4ac − b² conserved: exactly on rationals, within drift on floats.
fn discriminant(samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..samples {
        let q = random_rational_quadratic(&mut rng);
        if q.landen_step().discriminant() != q.discriminant() {
            failures += 1;
        }
    }
    for _ in 0..samples {
        let q = random_float_quadratic(&mut rng);
        let drift = (q.landen_step().discriminant() - q.discriminant()).abs();
        if drift >= DRIFT_BOUND * q.discriminant() {
            failures += 1;
        }
    }
    SuiteReport {
        name: "discriminant",
        checks: 2 * samples,
        failures,
    }
}

/// Scaled-product identity exact at 7 points, and the normalization route
/// equal to the direct step.
fn identity(samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1d);
    let mut failures = 0;
    for _ in 0..samples {
        let q = random_rational_quadratic(&mut rng);
        let s = ScalingCoefficients::from_quadratic(&q);
        if !scaling::polynomial_identity_residual(&q, &s).is_zero() {
            failures += 1;
        }
        if scaling::step_via_scaling(&q) != q.landen_step() {
            failures += 1;
        }
    }
    SuiteReport {
        name: "identity",
        checks: 2 * samples,
        failures,
    }
}

/// The Fourier modes S₂, S₄, C₂, C₄ of the scaled integrand vanish.
fn vanishing(samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5c);
    let mut failures = 0;
    for _ in 0..samples {
        let q = random_float_quadratic(&mut rng);
        let e = ScalingCoefficients::from_quadratic(&q).e_triple();
        for k in [2u32, 4] {
            for result in [
                quadrature::s_integral(k, &e, 1e-10),
                quadrature::c_integral(k, &e, 1e-10),
            ] {
                match result {
                    Ok(r) if r.value.abs() < VANISHING_BOUND => {}
                    _ => failures += 1,
                }
            }
        }
    }
    SuiteReport {
        name: "vanishing",
        checks: 4 * samples,
        failures,
    }
}

/// Elliptic value invariant under one mean step, and the mean-iteration
/// value consistent with direct quadrature on a spot-check subset.
fn gauss(samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a);
    let mut failures = 0;
    let mut checks = 0;
    for index in 0..samples {
        let b: f64 = rng.gen_range(0.01..=10.0);
        let a: f64 = rng.gen_range(b..=10.01);
        let lhs = agm::elliptic_g(a, b).unwrap();
        let rhs = agm::elliptic_g((a + b) / 2.0, (a * b).sqrt()).unwrap();
        checks += 1;
        if (lhs - rhs).abs() >= GAUSS_BOUND {
            failures += 1;
        }
        // quadrature cross-check on a handful of the sampled pairs
        if index % 20 == 0 {
            checks += 1;
            match quadrature::integrate_elliptic_form(a, b, 1e-10) {
                Ok(r) if (r.value - lhs).abs() < 1e-9 => {}
                _ => failures += 1,
            }
        }
    }
    SuiteReport {
        name: "gauss",
        checks,
        failures,
    }
}

/// Change of variables commutes with the step (exact), the conserved
/// surface stays put (exact), and the closed-form orbit matches the
/// collapsed iteration (float).
fn conjugacy(samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
    let mut failures = 0;
    let mut checks = 0;
    for _ in 0..samples {
        let q = random_rational_quadratic(&mut rng);
        let reduced = ReducedState::from_quadratic(&q);
        checks += 2;
        if reduced.step() != ReducedState::from_quadratic(&q.landen_step()) {
            failures += 1;
        }
        if reduced.step().discriminant() != reduced.discriminant() {
            failures += 1;
        }
    }
    for _ in 0..samples.min(100) {
        let q = random_float_quadratic(&mut rng);
        let Some(p) = ConvergenceParams::from_quadratic(&q) else {
            continue;
        };
        checks += 1;
        let mut x = *q.a() + *q.c();
        let mut ok = true;
        for n in 0..=8u32 {
            if (p.closed_form_x(n) - x).abs() >= 1e-12 * p.w() {
                ok = false;
            }
            x = convergence::collapsed_step(x, p.w());
        }
        if !ok {
            failures += 1;
        }
    }
    SuiteReport {
        name: "conjugacy",
        checks,
        failures,
    }
}

/// The line integral is unchanged by the coefficient step, certified by
/// independent quadrature on both sides.
fn invariance(samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x14);
    let mut failures = 0;
    for _ in 0..samples {
        let q = random_float_quadratic(&mut rng);
        let before = quadrature::integrate_rational_line(&q, ORACLE_TOL);
        let after = quadrature::integrate_rational_line(&q.landen_step(), ORACLE_TOL);
        match (before, after) {
            (Ok(x), Ok(y)) if (x.value - y.value).abs() < 2.0 * ORACLE_TOL => {}
            _ => failures += 1,
        }
    }
    SuiteReport {
        name: "invariance",
        checks: samples,
        failures,
    }
}

pub fn render_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for report in reports {
        out.push_str(&format!(
            "{:<14} {:>5}/{:<5} checks passed{}\n",
            report.name,
            report.checks - report.failures,
            report.checks,
            if report.passed() { "" } else { "  FAIL" }
        ));
    }
    let total: usize = reports.iter().map(|r| r.checks).sum();
    let failed: usize = reports.iter().map(|r| r.failures).sum();
    if failed == 0 {
        out.push_str(&format!("all suites passed ({total} checks)\n"));
    } else {
        out.push_str(&format!("{failed} of {total} checks FAILED\n"));
    }
    out
}

pub fn all_passed(reports: &[SuiteReport]) -> bool {
    reports.iter().all(SuiteReport::passed)
}

//! Fixed verification suites for the resolvent kernel, shared by the
//! `resolvent-suite` task and the acceptance tests.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{radial_distance, GroupPoint};
use crate::quadrature::QuadSpec;
use crate::resolvent::{default_ode_step, f0_profile, f0_profile_dim, f0_small_r_leading, ode_residual, resolvent_kernel, ResolventParams};

/// One named pass/fail measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub threshold: f64,
}

impl Check {
    /// Passes when `value ≤ threshold`.
    pub fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Check { name: name.to_string(), pass: value <= threshold, value, threshold }
    }
}

pub fn closed_form_nus() -> [Complex64; 2] {
    [Complex64::new(-1.0, 0.0), Complex64::new(-0.5, -0.5)]
}

/// `n = 2` kernel against `(4π)^{-1} e^{-x} e^{νR} / sh R` at `points`
/// random points per `ν`; returns the largest relative error.
pub fn resolvent_closed_form_error(points: usize, seed: u64, quad: &QuadSpec) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for nu in closed_form_nus() {
        let p = ResolventParams::from_nu(2, nu)?;
        for _ in 0..points {
            let g = GroupPoint::new(rng.gen_range(-2.0..2.0), vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)])?;
            let r = radial_distance(&g);
            let got = resolvent_kernel(&p, &g, quad)?;
            let want = (nu * r).exp() * (-g.x).exp() / (4.0 * PI * r.sinh());
            worst = worst.max((got - want).norm() / want.norm());
        }
    }
    Ok(worst)
}

/// Worst ODE residual over `d ∈ [1.01, 20]` (geometric, `points` values),
/// `n ∈ {1, 2, 3}` and two values of `ν`.
pub fn ode_residual_worst(points: usize, quad: &QuadSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for nu in [Complex64::new(-1.0, 0.0), Complex64::new(-0.3, -0.7)] {
            let p = ResolventParams::from_nu(n, nu)?;
            for i in 0..points {
                let d = 1.01 * (20.0f64 / 1.01).powf(i as f64 / (points - 1).max(1) as f64);
                worst = worst.max(ode_residual(&p, d, default_ode_step(d), quad)?);
            }
        }
    }
    Ok(worst)
}

/// The continued profile computed with `l` and `l + 1` iterations of `D_sh`
/// at 20 parameter points with fractional dimension; returns the largest
/// relative disagreement.
pub fn continuation_worst(quad: &QuadSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (dim, l0) in [(1.5f64, 0usize), (2.5, 1)] {
        for nu in [Complex64::new(-1.0, 0.0), Complex64::new(-0.3, -2.0)] {
            for r in [0.01, 0.3, 1.0, 4.0, 10.0] {
                let a = f0_profile_dim(dim, l0, nu, r, quad)?;
                let b = f0_profile_dim(dim, l0 + 1, nu, r, quad)?;
                worst = worst.max((a - b).norm() / b.norm());
            }
        }
    }
    Ok(worst)
}

/// `|f₀(R) / leading(R)|` at `R = 10^{-3}`, `ν = -1`.
pub fn small_r_ratio(n: usize, quad: &QuadSpec) -> Result<f64> {
    let r = 1e-3;
    let p = ResolventParams::from_nu(n, Complex64::new(-1.0, 0.0))?;
    Ok(f0_profile(&p, r, quad)?.norm() / f0_small_r_leading(n, r))
}

/// Criteria for the resolvent kernel at their acceptance tolerances.
pub fn resolvent_suite(seed: u64, quad: &QuadSpec) -> Result<Vec<Check>> {
    let mut checks = vec![
        Check::at_most("resolvent-closed-form", resolvent_closed_form_error(20, seed, quad)?, 1e-8),
        Check::at_most("ode-residual", ode_residual_worst(30, quad)?, 1e-4),
        Check::at_most("continuation", continuation_worst(quad)?, 1e-7),
    ];
    for (n, tol) in [(1, 0.2), (2, 0.05), (3, 0.05)] {
        let ratio = small_r_ratio(n, quad)?;
        checks.push(Check::at_most(&format!("small-r/n={n}"), (ratio - 1.0).abs(), tol));
    }
    Ok(checks)
}

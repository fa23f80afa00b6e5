use std::f64::consts::PI;

use axb_kernels::group::{radial_distance, GroupPoint};
use axb_kernels::quadrature::QuadSpec;
use axb_kernels::report::suites::{continuation_worst, ode_residual_worst, small_r_ratio};
use axb_kernels::resolvent::{default_ode_step, f0_profile_dim, ode_residual, resolvent_kernel, ResolventParams};
use axb_kernels::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quad() -> QuadSpec {
    QuadSpec::with_tol(1e-11)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(60))]

    #[test]
    fn continuation_identity(half in 0usize..2, re in -2.0..-0.2f64, im in -3.0..3.0f64, r in 0.01..8.0f64) {
        let (dim, l0) = [(1.5, 0usize), (2.5, 1)][half];
        let nu = Complex64::new(re, im);
        let a = f0_profile_dim(dim, l0, nu, r, &quad()).unwrap();
        let b = f0_profile_dim(dim, l0 + 1, nu, r, &quad()).unwrap();
        prop_assert!((a - b).norm() <= 1e-7 * b.norm(), "dim={dim} nu={nu} R={r}: {a} vs {b}");
    }

    #[test]
    fn radial_ode_holds(n in 1usize..=3, re in -2.0..-0.2f64, im in -1.5..1.5f64, d in 1.01..20.0f64) {
        let p = ResolventParams::from_nu(n, Complex64::new(re, im)).unwrap();
        let res = ode_residual(&p, d, default_ode_step(d), &quad()).unwrap();
        prop_assert!(res <= 1e-4, "n={n} d={d}: {res}");
    }
}

#[test]
fn fixed_grids_meet_tolerances() {
    assert!(continuation_worst(&quad()).unwrap() <= 1e-7);
    assert!(ode_residual_worst(30, &quad()).unwrap() <= 1e-4);
}

#[test]
fn small_r_ratio_tends_to_one() {
    for n in 2..=3 {
        let ratio = small_r_ratio(n, &quad()).unwrap();
        assert!((ratio - 1.0).abs() <= 0.05, "n={n}: {ratio}");
    }
    let ratio = small_r_ratio(1, &quad()).unwrap();
    assert!((ratio - 1.0).abs() <= 0.2, "n=1: {ratio}");
}

// ∫ (L - λ)φ · k dg = φ(e) for φ = (1 - x² - |y|²)⁴₊ and n = 2, λ = -1, ν = -1,
// with L = -∂ₓ² - e^{2x} Δ_y.
#[test]
fn weak_form_fundamental_solution() {
    let nu = -1.0;
    let lambda = -nu * nu;
    let p = ResolventParams::from_nu(2, Complex64::new(nu, 0.0)).unwrap();
    let g = GroupPoint::new(0.3, vec![0.2, -0.4]).unwrap();
    let r = radial_distance(&g);
    let closed = |x: f64, r: f64| (-x).exp() * (nu * r).exp() / (4.0 * PI * r.sinh());
    let k = resolvent_kernel(&p, &g, &quad()).unwrap();
    assert!((k.re - closed(g.x, r)).abs() <= 1e-9 * k.re);

    let l_phi = |x: f64, y1: f64, y2: f64| {
        let s = x * x + y1 * y1 + y2 * y2;
        if s >= 1.0 {
            return 0.0;
        }
        let (a, b) = ((1.0 - s).powi(3), (1.0 - s).powi(2));
        let d2 = |c: f64| -8.0 * a + 48.0 * c * c * b;
        let phi = (1.0 - s).powi(4);
        -d2(x) - (2.0 * x).exp() * (d2(y1) + d2(y2)) - lambda * phi
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let samples = 4_000_000;
    let (mut sum, mut sum2) = (0.0, 0.0);
    for _ in 0..samples {
        let (x, y1, y2) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let v = l_phi(x, y1, y2);
        if v == 0.0 {
            continue;
        }
        let r = radial_distance(&GroupPoint::new(x, vec![y1, y2]).unwrap());
        let f = 8.0 * v * closed(x, r);
        sum += f;
        sum2 += f * f;
    }
    let mean = sum / samples as f64;
    let se = ((sum2 / samples as f64 - mean * mean) / samples as f64).sqrt();
    println!("weak form: {mean:.5} ± {se:.5} (want 1)");
    assert!((mean - 1.0).abs() <= 0.02, "{mean} ± {se}");
}

use axb_kernels::group::{group_inv, group_mul, integrate_radial, monte_carlo_radial, radial_density, radial_distance, GroupPoint};
use axb_kernels::quadrature::QuadSpec;
use proptest::prelude::*;

fn point(n: usize) -> impl Strategy<Value = GroupPoint> {
    (-3.0..3.0f64, prop::collection::vec(-4.0..4.0f64, n)).prop_map(|(x, y)| GroupPoint::new(x, y).unwrap())
}

fn triple() -> impl Strategy<Value = (GroupPoint, GroupPoint, GroupPoint)> {
    (1usize..=3).prop_flat_map(|n| (point(n), point(n), point(n)))
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_law_is_associative((a, b, c) in triple()) {
        let left = group_mul(&group_mul(&a, &b).unwrap(), &c).unwrap();
        let right = group_mul(&a, &group_mul(&b, &c).unwrap()).unwrap();
        prop_assert!(close(left.x, right.x, 1e-12));
        for (u, v) in left.y.iter().zip(&right.y) {
            prop_assert!(close(*u, *v, 1e-12), "{u} vs {v}");
        }
    }

    #[test]
    fn distance_is_inverse_symmetric(a in (1usize..=3).prop_flat_map(point)) {
        let r = radial_distance(&a);
        let ri = radial_distance(&group_inv(&a));
        prop_assert!(close(r, ri, 1e-10), "{r} vs {ri}");
        prop_assert!(r >= a.x.abs() - 1e-12);
    }

    #[test]
    fn inverse_is_two_sided(a in (1usize..=3).prop_flat_map(point)) {
        let e = group_mul(&a, &group_inv(&a)).unwrap();
        prop_assert!(e.x.abs() < 1e-13 && e.y.iter().all(|v| v.abs() < 1e-11));
    }
}

#[test]
fn density_ratios_stay_in_band() {
    let mut worst: (f64, f64) = (f64::INFINITY, 0.0);
    for n in 1..=3 {
        for k in 0..=40 {
            let r = 10f64.powf(-3.0 + 0.1 * k as f64);
            let j = radial_density(n, r).unwrap().value;
            assert!(j > 0.0);
            let ratio = if r <= 1.0 { j / r.powi(n as i32) } else { j / (r * (0.5 * n as f64 * r).exp()) };
            worst = (worst.0.min(ratio), worst.1.max(ratio));
        }
    }
    println!("density ratio range {worst:?}");
    assert!(worst.0 >= 1.0 / 50.0 && worst.1 <= 50.0, "{worst:?}");
}

#[test]
fn radial_integration_matches_monte_carlo() {
    let profiles: [(&str, fn(f64) -> f64); 3] = [
        ("gauss", |r| (-3.0 * r * r).exp()),
        ("ring", |r| r * r * (-3.0 * r * r).exp()),
        ("compact", |r| (1.0 - r * r / 4.0).max(0.0).powi(3)),
    ];
    for n in 1..=2 {
        for (name, g) in profiles {
            let quad = QuadSpec::with_tol(1e-10).decay(1.0);
            let exact = integrate_radial(n, g, &quad).unwrap().value.re;
            // R ≤ 2.5 holds g below 1e-8 of its peak; within it |x| ≤ 2.5 and
            // |y|² = 2eˣ(ch R - ch x) ≤ 37.
            let mc = monte_carlo_radial(n, g, 2.6, 6.5, 16_000_000, 11);
            let rel = (mc.value - exact).abs() / exact;
            println!("n={n} {name}: radial {exact:.6}, MC {:.6} ± {:.6} (rel {rel:.4})", mc.value, mc.std_error);
            assert!(rel < 0.01, "n={n} {name}: {rel}");
        }
    }
}

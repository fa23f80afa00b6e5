use axb_kernels::dsh::{dsh_apply_exp, dsh_apply_sin};
use axb_kernels::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    // D^{l+1} g = d/dv (D^l g / sh v), checked by central differences.
    #[test]
    fn recursion_matches_finite_differences(l in 0i32..=4, re in -3.0..1.0f64, im in -6.0..6.0f64, v in 0.2..4.0f64) {
        let mu = Complex64::new(re, im);
        let h = 1e-5;
        let f = |w: f64| dsh_apply_exp(l, mu, w).unwrap() / w.sinh();
        let fd = (f(v + h) - f(v - h)) / (2.0 * h);
        let exact = dsh_apply_exp(l + 1, mu, v).unwrap();
        let scale = exact.norm().max(f(v).norm() / v.sinh().min(1.0));
        prop_assert!((fd - exact).norm() <= 1e-6 * scale, "l={l} mu={mu} v={v}: {fd} vs {exact}");
    }

    #[test]
    fn sin_variant_is_odd(l in 0usize..=4, s in 0.0..200.0f64, v in 1e-4..10.0f64) {
        let a = dsh_apply_sin(l, s, v).unwrap();
        let b = dsh_apply_sin(l, -s, v).unwrap();
        prop_assert!((a + b).abs() <= 1e-12 * a.abs().max(1e-300));
    }
}

// |D^l[e^{isv}]| e^{lv} / (1+|s|)^l stays bounded for large v: the sup over
// the far half of the range does not exceed the sup over the near half.
#[test]
fn large_v_bound_shape() {
    for l in 0..=3 {
        let (mut near, mut far): (f64, f64) = (0.0, 0.0);
        for i in 0..=120 {
            let v = 1.0 + 29.0 * i as f64 / 120.0;
            for j in 0..=80 {
                let s = -100.0 + 2.5 * j as f64;
                let val = dsh_apply_exp(l, Complex64::new(0.0, s), v).unwrap();
                let w = val.norm() * (l as f64 * v).exp() / (1.0 + s.abs()).powi(l);
                if v < 15.5 { near = near.max(w) } else { far = far.max(w) }
            }
        }
        println!("l={l}: sup near {near:.4}, far {far:.4}");
        assert!(near.is_finite() && far <= near * (1.0 + 1e-9), "l={l}: {near} {far}");
    }
}

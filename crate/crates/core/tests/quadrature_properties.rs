use axb_kernels::quadrature::{integrate_algebraic_endpoint, integrate_singular_osc, QuadResult, QuadSpec};
use axb_kernels::resolvent::dsh_profile_integral;
use axb_kernels::spectral::{default_l, f_r_scaled};
use axb_kernels::Complex64;

type Integrand = Box<dyn Fn(&QuadSpec) -> QuadResult>;

// Fifty integrals of the kind the kernels need: F_R at real and complex
// frequencies, and resolvent profiles in integer and fractional dimension.
fn corpus() -> Vec<(String, Integrand)> {
    let mut out: Vec<(String, Integrand)> = Vec::new();
    for n in 1..=3usize {
        for &r in &[0.01, 0.5, 3.0] {
            for &s in &[0.0, 7.0, 150.0] {
                out.push((format!("F_R n={n} R={r} s={s}"), Box::new(move |q| f_r_scaled(n, default_l(n), r, Complex64::new(s, 0.0), 0.0, q).unwrap())));
            }
        }
    }
    for &(dim, l) in &[(1.5, 0usize), (2.5, 1), (2.0, 1)] {
        for &r in &[0.05, 1.0, 6.0] {
            for &nu in &[Complex64::new(-1.0, 0.0), Complex64::new(-0.3, -2.0)] {
                let scale = if r > 3.0 { r } else { 0.0 };
                out.push((format!("profile dim={dim} R={r} nu={nu}"), Box::new(move |q| dsh_profile_integral(dim, l, nu, r, scale, q).unwrap())));
            }
        }
    }
    for &r in &[0.1, 2.0] {
        out.push((format!("contour n=2 R={r}"), Box::new(move |q| f_r_scaled(2, 1, r, Complex64::new(5.0, 0.4), 0.0, q).unwrap())));
        out.push((format!("contour n=3 R={r}"), Box::new(move |q| f_r_scaled(3, 1, r, Complex64::new(-3.0, 0.9), 0.0, q).unwrap())));
    }
    out.push(("F_R n=1 R=12 scaled".into(), Box::new(|q| f_r_scaled(1, 0, 12.0, Complex64::new(40.0, 0.0), 6.0, q).unwrap())));
    out
}

#[test]
fn halving_tolerance_stays_within_error_estimate() {
    let cases = corpus();
    assert_eq!(cases.len(), 50);
    for (name, f) in &cases {
        let q = QuadSpec::with_tol(1e-8);
        let a = f(&q);
        let b = f(&QuadSpec::with_tol(0.5e-8));
        let diff = (a.value - b.value).norm();
        let floor = 1e-14 * a.value.norm();
        assert!(diff <= a.error_estimate + floor, "{name}: diff {diff:.3e} > estimate {:.3e}", a.error_estimate);
    }
}

#[test]
fn pure_oscillation_matches_closed_form() {
    let one = |_v: f64| Complex64::new(1.0, 0.0);
    // Rounding of the nodes puts a floor of about s·v·1e-16 on the phase.
    for &rel in &[1e-8, 1e-10] {
        let q = QuadSpec::with_tol(rel);
        for &r in &[0.0, 2.5] {
            for &s in &[10.0, 1e2, 1e3, 1e4] {
                let got = integrate_algebraic_endpoint(one, 0.0, r, r + 1.0, s, &q).unwrap().value;
                let i = Complex64::i();
                let want = ((i * s * (r + 1.0)).exp() - (i * s * r).exp()) / (i * s);
                assert!((got - want).norm() <= rel * want.norm(), "R={r} s={s}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn inverse_sqrt_singularity_matches_reference() {
    let one = |_v: f64| Complex64::new(1.0, 0.0);
    for &r in &[0.01, 0.1, 1.0, 5.0] {
        let rel = 1e-10;
        let got = integrate_singular_osc(one, -0.5, r, 0.0, r + 1.0, &QuadSpec::with_tol(rel)).unwrap().value.re;
        let reference = integrate_singular_osc(one, -0.5, r, 0.0, r + 1.0, &QuadSpec::with_tol(0.1 * rel)).unwrap().value.re;
        // Independent check: v = R + u², dv = 2u du removes the singularity.
        let smooth = |u: f64| {
            let v = r + u * u;
            let d = 2.0 * (0.5 * (v + r)).sinh() * (0.5 * (v - r)).sinh();
            if u == 0.0 { 2.0 / r.sinh().sqrt() } else { 2.0 * u / d.sqrt() }
        };
        let gl = axb_kernels::special::GaussLegendre::new(60);
        let independent: f64 = (0..20).map(|k| {
            let (a, b) = (k as f64 / 20.0, (k + 1) as f64 / 20.0);
            gl.mapped(a, b).map(|(u, w)| w * smooth(u)).sum::<f64>()
        }).sum();
        assert!((got - reference).abs() <= rel * reference, "R={r}: {got} vs {reference}");
        assert!((got - independent).abs() <= rel * independent, "R={r}: {got} vs {independent}");
    }
}

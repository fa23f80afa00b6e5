use axb_kernels::estimates::{EnvelopeRegime, EnvelopeReport, EnvelopeSpec, EnvelopeSweep};
use axb_kernels::group::GroupPoint;
use axb_kernels::quadrature::QuadSpec;
use axb_kernels::spectral::{contour_kernel, default_l, multiplier_kernel, multiplier_radial, MultiplierProfile, Path, SpectralTable};
use axb_kernels::Complex64;

fn quad() -> QuadSpec {
    QuadSpec::with_tol(1e-11)
}

// For even m the full-line integral with F_R(s) - F_R(-s) equals the
// half-line sine form.
#[test]
fn half_line_and_full_line_agree() {
    let profiles = [MultiplierProfile::bump_low(), MultiplierProfile::gauss_heat(0.3).unwrap()];
    for psi in &profiles {
        assert!(psi.even);
        for n in 1..=3 {
            for &r in &[0.05, 0.7, 3.0] {
                let l = default_l(n);
                let (a, _) = multiplier_radial(n, l, psi, r, Path::HalfLine, &quad()).unwrap();
                let (b, _) = multiplier_radial(n, l, psi, r, Path::FullLine, &quad()).unwrap();
                let scale = a.norm().max(b.norm());
                assert!((a - b).norm() <= 1e-9 * scale, "{:?} n={n} R={r}: {a} vs {b}", psi.kind);
            }
        }
    }
}

// Heat multiplier e^{-τs²} = Ψ(s²) with Ψ(z) = e^{-τz}, integrated along
// ζ = s + iδ, against the real-axis subordination formula.
#[test]
fn shifted_contour_matches_real_axis() {
    let tau = 0.4;
    let psi = MultiplierProfile::gauss_heat(tau).unwrap();
    let points = [(0.0, 0.3), (0.4, 1.0), (-0.8, 0.5), (1.2, 2.5), (-0.3, 3.0)];
    for n in [2usize, 3] {
        for &(x, y) in &points {
            let mut yv = vec![0.0; n];
            yv[0] = y;
            let g = GroupPoint::new(x, yv).unwrap();
            let real = multiplier_kernel(n, default_l(n), &psi, &g, &quad()).unwrap().value;
            let contour = contour_kernel(n, default_l(n), |z: Complex64| (-tau * z).exp(), 0.3, 14.0, &g, &quad()).unwrap();
            assert!((real - contour).norm() <= 1e-6 * real.norm(), "n={n} ({x}, {y}): {real} vs {contour}");
        }
    }
}

// |G_λ(R, R - t)| peaks within 4/λ of R = t. G vanishes on the cone itself
// and oscillates on the scale 1/λ, so the scan over R ∈ [t-1, t+1] steps by
// 1/λ and then refines.
#[test]
fn wave_kernel_concentrates_on_the_light_cone() {
    let (n, lambda) = (2usize, 64.0);
    let psi = MultiplierProfile::bump_band();
    let q = QuadSpec::with_tol(1e-9);
    let g_at = |r: f64, t: f64| {
        let table = SpectralTable::for_wave(n, default_l(n), r, &psi, lambda, (r - t).abs(), &q).unwrap();
        table.g(r - t).abs()
    };
    let argmax = |rs: &[f64], t: f64| rs.iter().map(|&r| (r, g_at(r, t))).fold((0.0, -1.0), |m, v| if v.1 > m.1 { v } else { m });
    for t in [1.0, 2.0, 4.0] {
        let coarse: Vec<f64> = (-64..=64).map(|k| t + k as f64 / lambda).filter(|&r| r > 0.0).collect();
        let (r0, _) = argmax(&coarse, t);
        let fine: Vec<f64> = (-8..=8).map(|k| r0 + k as f64 / (8.0 * lambda)).filter(|&r| r > 0.0).collect();
        let (r1, _) = argmax(&fine, t);
        println!("t={t}: peak at R = {r1:.5}, offset {:.5} (limit {:.5})", r1 - t, 4.0 / lambda);
        assert!((r1 - t).abs() <= 4.0 / lambda, "t={t}: R={r1}");
    }
}

// The symmetrized small-R envelope carries no R-singular factor: a constant
// fitted at R = 0.05 also covers R = 0.01 up to modest slack.
#[test]
fn improved_small_r_bound_is_uniform_in_r() {
    let spec = EnvelopeSpec::new(2, EnvelopeRegime::SmallRImproved, 4).unwrap();
    let sweep = EnvelopeSweep { lambdas: vec![16.0], radii: vec![0.01, 0.05], lambda_rho_max: 64.0, lambda_rho_step: 0.25 };
    let rep = EnvelopeReport::sample(&spec, &sweep, &QuadSpec::with_tol(1e-9)).unwrap();
    let fit_at = |r: f64| {
        rep.samples.iter().filter(|s| s.r == r).map(|s| s.measured / spec.predicted(s.r, s.rho, s.lambda)).fold(0.0, f64::max)
    };
    let (c1, c5) = (fit_at(0.01), fit_at(0.05));
    println!("C(0.01) = {c1:.4}, C(0.05) = {c5:.4}");
    assert!(c1.is_finite() && c5 > 0.0);
    // An R^{-1} factor would make the ratio 5.
    assert!(c1 <= 2.0 * c5, "{c1} vs {c5}");
}

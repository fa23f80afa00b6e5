//! Panel rules: Gauss–Kronrod 7/15 and a Filon-type Legendre rule for
//! `∫ f(v) e^{iωv} dv` with non-oscillatory `f`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::special::{legendre_seq, spherical_bessel_seq, GaussLegendre};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss 7-point weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of one panel evaluation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelEstimate {
    pub value: Complex64,
    pub error: f64,
    /// Approximation of ∫|integrand| over the panel (roundoff scale).
    pub abs: f64,
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut e = err.abs();
    if resasc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / resasc).powf(1.5);
        e = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * resabs;
        if min_err > e {
            e = min_err;
        }
    }
    e
}

/// Gauss–Kronrod 15-point rule with the embedded 7-point Gauss estimate.
pub(crate) fn gk15<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, a: f64, b: f64) -> PanelEstimate {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut fv1 = [Complex64::new(0.0, 0.0); 7];
    let mut fv2 = [Complex64::new(0.0, 0.0); 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let mut resabs = fc.norm() * WGK[7];
    for j in 0..7 {
        resabs += WGK[j] * (fv1[j].norm() + fv2[j].norm());
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let habs = h.abs();
    let err = rescale_error(((resk - resg) * h).norm(), resabs * habs, resasc * habs);
    PanelEstimate { value: resk * h, error: err, abs: resabs * habs }
}

struct FilonTables {
    rule: &'static GaussLegendre,
    /// legendre[j][k] = P_k(x_j)
    legendre: Vec<Vec<f64>>,
}

fn filon_tables() -> &'static FilonTables {
    static TABLES: OnceLock<FilonTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let rule = GaussLegendre::order16();
        let m = rule.len();
        let legendre = rule
            .nodes
            .iter()
            .map(|&x| {
                let mut p = vec![0.0; m];
                legendre_seq(m - 1, x, &mut p);
                p
            })
            .collect();
        FilonTables { rule, legendre }
    })
}

/// Filon-type rule for `∫_a^b amp(v) e^{i freq v} dv`.
///
/// `amp` is interpolated by its Legendre expansion at 16 Gauss nodes and the
/// oscillatory moments `∫ P_k(x) e^{iωx} dx = 2 i^k j_k(ω)` are applied
/// exactly. The error estimate is the size of the two trailing coefficients.
pub(crate) fn filon_legendre<F: Fn(f64) -> Complex64 + ?Sized>(
    amp: &F,
    freq: f64,
    a: f64,
    b: f64,
) -> PanelEstimate {
    let t = filon_tables();
    let m = t.rule.len();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
    let mut resabs = 0.0;
    for (j, (&x, &w)) in t.rule.nodes.iter().zip(&t.rule.weights).enumerate() {
        let fj = amp(c + h * x);
        resabs += w * fj.norm();
        let p = &t.legendre[j];
        for k in 0..m {
            coeffs[k] += fj * (w * p[k]);
        }
    }
    for (k, ck) in coeffs.iter_mut().enumerate() {
        *ck *= (2 * k + 1) as f64 * 0.5;
    }
    let omega = freq * h;
    let jk = spherical_bessel_seq(m - 1, omega);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut ik = Complex64::new(1.0, 0.0);
    for k in 0..m {
        sum += coeffs[k] * ik * (2.0 * jk[k]);
        ik *= Complex64::i();
    }
    let phase = Complex64::from_polar(1.0, freq * c);
    let habs = h.abs();
    let tail = coeffs[m - 1].norm() + coeffs[m - 2].norm();
    let err = (2.0 * habs * tail).max(50.0 * f64::EPSILON * resabs * habs);
    PanelEstimate { value: phase * sum * h, error: err, abs: resabs * habs }
}

/// Filon activates when the panel holds more than one full period.
pub(crate) fn needs_filon(freq: f64, width: f64) -> bool {
    freq.abs() * width.abs() > 2.0 * PI
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gk15_polynomial_exact() {
        let r = gk15(&|x: f64| Complex64::new(x.powi(10), 0.0), 0.0, 1.0);
        assert!((r.value.re - 1.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn filon_exact_for_constant_amplitude() {
        for &s in &[10.0, 1e2, 1e3, 1e4] {
            let r = filon_legendre(&|_v: f64| Complex64::new(1.0, 0.0), s, 0.3, 1.3);
            let i = Complex64::i();
            let exact = ((i * s * 1.3).exp() - (i * s * 0.3).exp()) / (i * s);
            assert!((r.value - exact).norm() / exact.norm() < 1e-12, "s={s}");
        }
    }

    #[test]
    fn filon_matches_gk_on_smooth_amplitude() {
        let amp = |v: f64| Complex64::new((-v).exp() * (1.0 + v * v), 0.0);
        let freq = 40.0;
        let f = Filon::reference(&amp, freq, 0.0, 2.0);
        let r = filon_legendre(&amp, freq, 0.0, 2.0);
        assert!((r.value - f).norm() < 1e-12);
    }

    struct Filon;
    impl Filon {
        fn reference(amp: &dyn Fn(f64) -> Complex64, freq: f64, a: f64, b: f64) -> Complex64 {
            // many small GK panels
            let n = 400;
            let h = (b - a) / n as f64;
            (0..n)
                .map(|k| {
                    let lo = a + k as f64 * h;
                    gk15(&|v: f64| amp(v) * Complex64::from_polar(1.0, freq * v), lo, lo + h).value
                })
                .sum()
        }
    }
}

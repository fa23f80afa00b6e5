//! The group `G = ℝ ⋉ ℝⁿ` with law `(x, y)(x', y') = (x + x', y + eˣ y')`,
//! the distance `R` to the identity and radial integration against the
//! right Haar measure `e^{-nx/2}`-weighted `dx dy`.

use std::f64::consts::LN_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate_decaying, integrate_finite, integrate_weighted_endpoint, ln_sinh, QuadResult, QuadSpec};
use crate::special::unit_ball_volume;

/// Below-one slack of `ch R` that is treated as rounding noise.
pub const ARCCH_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupPoint {
    pub x: f64,
    pub y: Vec<f64>,
}

impl GroupPoint {
    pub fn new(x: f64, y: Vec<f64>) -> Result<Self> {
        if y.is_empty() {
            return Err(invalid("n", "the normal factor needs dimension n ≥ 1"));
        }
        if !x.is_finite() || y.iter().any(|v| !v.is_finite()) {
            return Err(invalid("point", "coordinates must be finite"));
        }
        Ok(GroupPoint { x, y })
    }

    pub fn identity(n: usize) -> Self {
        GroupPoint { x: 0.0, y: vec![0.0; n] }
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn y_norm_sq(&self) -> f64 {
        self.y.iter().map(|v| v * v).sum()
    }
}

pub fn group_mul(a: &GroupPoint, b: &GroupPoint) -> Result<GroupPoint> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: b.n() });
    }
    let ex = a.x.exp();
    let y = a.y.iter().zip(&b.y).map(|(ya, yb)| ya + ex * yb).collect();
    Ok(GroupPoint { x: a.x + b.x, y })
}

pub fn group_inv(a: &GroupPoint) -> GroupPoint {
    let emx = (-a.x).exp();
    GroupPoint { x: -a.x, y: a.y.iter().map(|v| -emx * v).collect() }
}

/// `arcch z` on `[1, ∞)`; arguments within [`ARCCH_CLAMP`] below 1 map to 0.
///
/// The flag reports whether the clamp was applied.
pub fn arcch_clamped(z: f64) -> Result<(f64, bool)> {
    if z >= 1.0 {
        Ok((z.acosh(), false))
    } else if z >= 1.0 - ARCCH_CLAMP {
        Ok((0.0, true))
    } else {
        Err(Error::ArcchDomain { value: z })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Distance {
    pub value: f64,
    pub clamped: bool,
}

/// `R(x, y) = arcch(ch x + ½‖y‖² e^{-x})`, evaluated through
/// `ch R - 1 = 2 sh²(x/2) + ½‖y‖² e^{-x}` so small distances keep full accuracy.
pub fn radial_distance_checked(a: &GroupPoint) -> Result<Distance> {
    let h = (0.5 * a.x).sinh();
    let delta = 2.0 * h * h + 0.5 * a.y_norm_sq() * (-a.x).exp();
    if delta.is_nan() {
        return Err(invalid("point", "distance is undefined"));
    }
    if delta < 0.0 {
        if delta >= -ARCCH_CLAMP {
            return Ok(Distance { value: 0.0, clamped: true });
        }
        return Err(Error::ArcchDomain { value: 1.0 + delta });
    }
    if delta > 1e300 {
        // ch R ≈ e^R / 2
        return Ok(Distance { value: delta.ln() + LN_2, clamped: false });
    }
    // arcch(1 + δ) = ln(1 + δ + sqrt(δ(2 + δ)))
    let value = (delta + (delta * (2.0 + delta)).sqrt()).ln_1p();
    Ok(Distance { value, clamped: false })
}

pub fn radial_distance(a: &GroupPoint) -> f64 {
    radial_distance_checked(a).map(|d| d.value).unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityValue {
    pub value: f64,
    pub error_estimate: f64,
}

fn density_prefactor(n: usize) -> f64 {
    let nf = n as f64;
    0.5 * nf * 2f64.powf(0.5 * nf) * unit_ball_volume(n)
}

/// `J(R) = (n/2) 2^{n/2} V_n sh R ∫_{-R}^{R} (ch R - ch x)^{n/2-1} dx`.
pub fn radial_density(n: usize, r: f64) -> Result<DensityValue> {
    radial_density_with(n, r, &QuadSpec::with_tol(1e-12))
}

pub fn radial_density_with(n: usize, r: f64, quad: &QuadSpec) -> Result<DensityValue> {
    if n == 0 {
        return Err(invalid("n", "must be at least 1"));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid("R", format!("must be positive, got {r}")));
    }
    let pre = density_prefactor(n) * r.sinh();
    if n == 2 {
        return Ok(DensityValue { value: pre * 2.0 * r, error_estimate: 0.0 });
    }
    // 2 ∫_0^R (ch R - ch(R - w))^β dw, ch R - ch(R - w) = 2 sh(R - w/2) sh(w/2)
    let beta = 0.5 * n as f64 - 1.0;
    let log_factor = move |w: f64| {
        let half = if w < 1e-8 { -LN_2 + w * w / 48.0 } else { ln_sinh(0.5 * w) - w.ln() };
        LN_2 + ln_sinh(r - 0.5 * w) + half
    };
    let res = integrate_weighted_endpoint(|_| Complex64::new(1.0, 0.0), beta, log_factor, 0.0, r, 0.0, quad)?;
    Ok(DensityValue { value: 2.0 * pre * res.value.re, error_estimate: 2.0 * pre * res.error_estimate })
}

/// Tabulated `J` on a grid of radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialDensity {
    pub n: usize,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
}

impl RadialDensity {
    pub fn tabulate(n: usize, grid: &[f64]) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        let mut errors = Vec::with_capacity(grid.len());
        for &r in grid {
            let d = radial_density(n, r)?;
            values.push(d.value);
            errors.push(d.error_estimate);
        }
        Ok(RadialDensity { n, grid: grid.to_vec(), values, errors })
    }
}

/// `∫_G e^{-nx/2} g(R(x,y)) dx dy = ∫_0^∞ g(R) J(R) dR`.
///
/// `quad.decay_rate` must bound the decay of `g(R) J(R)`.
pub fn integrate_radial<F>(n: usize, g: F, quad: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let inner = QuadSpec { rel_tol: (quad.rel_tol * 1e-2).max(1e-14), ..QuadSpec::default() };
    let f = |r: f64| {
        let gv = g(r);
        if gv == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let j = radial_density_with(n, r, &inner).map(|d| d.value).unwrap_or(f64::NAN);
        Complex64::new(gv * j, 0.0)
    };
    match integrate_decaying(f, 0.0, quad) {
        Err(Error::DecayViolation { at }) => Err(Error::Divergence { at }),
        other => other,
    }
}

/// `∫_0^{R_max} g(R) J(R) dR`, the integral of `e^{-nx/2} g(R)` over the ball `B_{R_max}`.
pub fn integrate_radial_finite<F>(n: usize, g: F, r_max: f64, quad: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let inner = QuadSpec { rel_tol: (quad.rel_tol * 1e-2).max(1e-14), ..QuadSpec::default() };
    let f = |r: f64| {
        let gv = g(r);
        if gv == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let j = radial_density_with(n, r, &inner).map(|d| d.value).unwrap_or(f64::NAN);
        Complex64::new(gv * j, 0.0)
    };
    integrate_finite(f, 0.0, r_max, quad)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Plain Monte Carlo of `∫ e^{-nx/2} g(R(x,y))` over `|x| ≤ x_max`, `|y_j| ≤ y_max`.
pub fn monte_carlo_radial<F>(n: usize, g: F, x_max: f64, y_max: f64, samples: usize, seed: u64) -> MonteCarloEstimate
where
    F: Fn(f64) -> f64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let volume = 2.0 * x_max * (2.0 * y_max).powi(n as i32);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut p = GroupPoint { x: 0.0, y: vec![0.0; n] };
    for _ in 0..samples {
        p.x = rng.gen_range(-x_max..x_max);
        for yj in p.y.iter_mut() {
            *yj = rng.gen_range(-y_max..y_max);
        }
        let val = (-0.5 * n as f64 * p.x).exp() * g(radial_distance(&p));
        sum += val;
        sum_sq += val * val;
    }
    let m = samples as f64;
    let mean = sum / m;
    let var = (sum_sq / m - mean * mean).max(0.0);
    MonteCarloEstimate { value: volume * mean, std_error: volume * (var / m).sqrt(), samples, seed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pt(x: f64, y: &[f64]) -> GroupPoint {
        GroupPoint::new(x, y.to_vec()).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let a = pt(1.0, &[2.0]);
        let b = pt(3.0, &[4.0]);
        let ab = group_mul(&a, &b).unwrap();
        assert_eq!(ab.x, 4.0);
        assert!((ab.y[0] - (2.0 + std::f64::consts::E * 4.0)).abs() < 1e-14);
        let e = GroupPoint::identity(1);
        assert_eq!(group_mul(&e, &a).unwrap(), a);
        let inv = group_inv(&a);
        assert!((inv.y[0] + 2.0 / std::f64::consts::E).abs() < 1e-15);
        let id = group_mul(&a, &inv).unwrap();
        assert!(id.x.abs() < 1e-15 && id.y[0].abs() < 1e-15);
        assert_eq!(group_inv(&pt(0.0, &[3.0, 4.0])), pt(0.0, &[-3.0, -4.0]));
        assert!(matches!(group_mul(&a, &pt(0.0, &[1.0, 1.0])), Err(Error::DimensionMismatch { .. })));
        assert!(GroupPoint::new(f64::NAN, vec![0.0]).is_err());
        assert!(GroupPoint::new(0.0, vec![]).is_err());
    }

    #[test]
    fn distance_examples() {
        assert!((radial_distance(&pt(-2.5, &[0.0, 0.0])) - 2.5).abs() < 1e-15);
        assert!((radial_distance(&pt(1e-9, &[0.0])) - 1e-9).abs() < 1e-22);
        let y = [0.3, -1.2];
        let want = (1.0 + 0.5 * (0.09 + 1.44f64)).acosh();
        assert!((radial_distance(&pt(0.0, &y)) - want).abs() < 1e-14);
        assert_eq!(radial_distance(&GroupPoint::identity(3)), 0.0);
    }

    #[test]
    fn arcch_clamp_window() {
        assert_eq!(arcch_clamped(1.0 - 1e-13).unwrap(), (0.0, true));
        assert!(matches!(arcch_clamped(1.0 - 1e-9), Err(Error::ArcchDomain { .. })));
        assert_eq!(arcch_clamped(1.0).unwrap(), (0.0, false));
    }

    #[test]
    fn density_even_and_odd() {
        let r: f64 = 0.8;
        let j2 = radial_density(2, r).unwrap().value;
        assert!((j2 - 4.0 * PI * r * r.sinh()).abs() < 1e-13 * j2);
        // n = 4: ∫_{-R}^{R} (ch R - ch x) dx = 2R ch R - 2 sh R
        let j4 = radial_density(4, r).unwrap().value;
        let want = 2.0 * 4.0 * unit_ball_volume(4) * r.sinh() * (2.0 * r * r.cosh() - 2.0 * r.sinh());
        assert!((j4 - want).abs() < 1e-11 * want, "{j4} vs {want}");
        // n = 1 at small R: ∫ (ch R - ch x)^{-1/2} dx → π√2
        let r = 1e-4;
        let j1 = radial_density(1, r).unwrap().value;
        let want = 0.5 * 2f64.sqrt() * 2.0 * r.sinh() * PI * 2f64.sqrt();
        assert!((j1 - want).abs() < 1e-7 * want);
        assert!(radial_density(0, 1.0).is_err());
        assert!(radial_density(2, 0.0).is_err());
    }
}

//! For `n = 2` radial kernels on ℝ³ move to `G` through
//! `Tf(x, y) = C e^{-x} (R / sh R) f(R)` with `C = 1`, commuting with the
//! Laplacians and preserving `L¹`. This gives closed-form oracles for the
//! heat and resolvent kernels and a one-dimensional comparator for wave
//! kernels.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::group::{radial_distance, GroupPoint};
use crate::quadrature::QuadSpec;
use crate::special::GaussLegendre;
use crate::spectral::{default_l, wave_kernel, MultiplierProfile};

/// Calibrated so the transferred resolvent matches the `n = 2` resolvent kernel.
pub const TRANSFER_CONSTANT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum R3Label {
    Heat { t: f64 },
    Resolvent { nu_re: f64, nu_im: f64 },
    SmoothedWave { lambda: f64, t: f64 },
    Custom,
}

/// A radial kernel on ℝ³ given as a function of `R = |x|`.
#[derive(Clone)]
pub struct RadialR3Kernel {
    pub label: R3Label,
    profile: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for RadialR3Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialR3Kernel").field("label", &self.label).finish()
    }
}

impl RadialR3Kernel {
    pub fn eval(&self, r: f64) -> f64 {
        (self.profile)(r)
    }

    pub fn custom<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        RadialR3Kernel { label: R3Label::Custom, profile: Arc::new(f) }
    }

    /// `(4πt)^{-3/2} e^{-R²/4t}`.
    pub fn heat(t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(invalid("t", format!("must be positive, got {t}")));
        }
        Ok(RadialR3Kernel {
            label: R3Label::Heat { t },
            profile: Arc::new(move |r: f64| (4.0 * PI * t).powf(-1.5) * (-r * r / (4.0 * t)).exp()),
        })
    }

    /// Real part of `e^{νR} / (4πR)`, the kernel of `(Δ + ν²)^{-1}`.
    pub fn resolvent_re(nu: Complex64) -> Result<Self> {
        if !(nu.re < 0.0) {
            return Err(invalid("nu", format!("need Re(nu) < 0, got {nu}")));
        }
        Ok(RadialR3Kernel {
            label: R3Label::Resolvent { nu_re: nu.re, nu_im: nu.im },
            profile: Arc::new(move |r: f64| ((nu * r).exp() / (4.0 * PI * r)).re),
        })
    }
}

/// `Tf(g) = C e^{-x} (R / sh R) f(R)`; requires `n = 2`.
pub fn transfer(f: &RadialR3Kernel, g: &GroupPoint) -> Result<f64> {
    if g.n() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: g.n() });
    }
    let r = radial_distance(g);
    Ok(TRANSFER_CONSTANT * (-g.x).exp() * r_over_sh(r) * f.eval(r))
}

/// `R / sh R` with the removable point at 0.
pub fn r_over_sh(r: f64) -> f64 {
    if r < 1e-4 {
        1.0 - r * r / 6.0
    } else {
        r / r.sinh()
    }
}

/// Radial kernel of `ψ(|ξ|/λ) cos(t|ξ|)` on ℝ³:
/// `(2π² R)^{-1} ∫_0^∞ ψ(s/λ) cos(ts) sin(sR) s ds`.
pub fn r3_smoothed_wave(lambda: f64, t: f64, psi: &MultiplierProfile, r: f64, _quad: &QuadSpec) -> Result<f64> {
    if !(r > 0.0) {
        return Err(invalid("R", format!("must be positive, got {r}")));
    }
    if !(lambda > 0.0) {
        return Err(invalid("lambda", format!("must be positive, got {lambda}")));
    }
    let d = psi.dilated(lambda);
    let gl = GaussLegendre::order20();
    let rate = r + t.abs() + 1.0;
    let mut sum = 0.0;
    for w in d.pieces().windows(2) {
        let (a, b) = (w[0], w[1]);
        let count = (((b - a) * rate / 4.0).ceil() as usize).max(1);
        let h = (b - a) / count as f64;
        for k in 0..count {
            let lo = a + k as f64 * h;
            for (s, wt) in gl.mapped(lo, lo + h) {
                sum += wt * d.eval(s) * (t * s).cos() * (s * r).sin() * s;
            }
        }
    }
    Ok(sum / (2.0 * PI * PI * r))
}

/// The smoothed ℝ³ wave kernel as a [`RadialR3Kernel`].
pub fn r3_wave_kernel(lambda: f64, t: f64, psi: &MultiplierProfile) -> RadialR3Kernel {
    let psi = psi.clone();
    let q = QuadSpec::default();
    RadialR3Kernel {
        label: R3Label::SmoothedWave { lambda, t },
        profile: Arc::new(move |r: f64| r3_smoothed_wave(lambda, t, &psi, r, &q).unwrap_or(f64::NAN)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub lambda: f64,
    pub t: f64,
    /// `(R, x, group value, transferred value, relative error)`.
    pub points: Vec<(f64, f64, f64, f64, f64)>,
    pub max_rel_error: f64,
}

/// Relative errors are floored at this fraction of the largest sampled
/// magnitude, since the kernels are tiny away from the light cone.
pub const CROSS_VALIDATION_FLOOR: f64 = 1e-3;

/// Compare `wave_kernel` at `n = 2` with the transferred ℝ³ kernel.
pub fn cross_validate(
    lambda: f64,
    t: f64,
    psi: &MultiplierProfile,
    sample_points: &[GroupPoint],
    quad: &QuadSpec,
) -> Result<CrossValidation> {
    let l = default_l(2);
    let rows: Vec<Result<(f64, f64, f64, f64)>> = sample_points
        .par_iter()
        .map(|g| {
            let k = wave_kernel(2, l, psi, lambda, t, g, quad)?;
            let r = k.r;
            let e = r3_smoothed_wave(lambda, t, psi, r, quad)?;
            let tv = TRANSFER_CONSTANT * (-g.x).exp() * r_over_sh(r) * e;
            Ok((r, g.x, k.value.re, tv))
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let scale = rows.iter().map(|r| r.3.abs()).fold(0.0, f64::max);
    let points: Vec<_> = rows
        .into_iter()
        .map(|(r, x, a, b)| {
            let rel = (a - b).abs() / b.abs().max(CROSS_VALIDATION_FLOOR * scale).max(f64::MIN_POSITIVE);
            (r, x, a, b, rel)
        })
        .collect();
    let max_rel_error = points.iter().map(|p| p.4).fold(0.0, f64::max);
    Ok(CrossValidation { lambda, t, points, max_rel_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transfer_limits_and_resolvent() {
        let one = RadialR3Kernel::custom(|_| 1.0);
        let near = GroupPoint::new(0.0, vec![1e-7, 0.0]).unwrap();
        assert!((transfer(&one, &near).unwrap() - TRANSFER_CONSTANT).abs() < 1e-12);
        assert!(transfer(&one, &GroupPoint::new(0.0, vec![1.0]).unwrap()).is_err());
        let nu = Complex64::new(-1.0, 0.0);
        let f = RadialR3Kernel::resolvent_re(nu).unwrap();
        let g = GroupPoint::new(0.4, vec![0.3, -0.2]).unwrap();
        let r = radial_distance(&g);
        let want = (-0.4f64).exp() * (-r).exp() / (4.0 * PI * r.sinh());
        assert!((transfer(&f, &g).unwrap() - want).abs() < 1e-14 * want);
    }

    #[test]
    fn wave_matches_transfer() {
        let psi = MultiplierProfile::bump_band();
        let pts: Vec<GroupPoint> = [(0.1, 0.3), (-0.5, 1.0), (0.3, 2.0)]
            .iter()
            .map(|&(x, y)| GroupPoint::new(x, vec![y, 0.0]).unwrap())
            .collect();
        let cv = cross_validate(4.0, 1.0, &psi, &pts, &QuadSpec::with_tol(1e-11)).unwrap();
        assert!(cv.max_rel_error < 1e-6, "{cv:?}");
    }
}

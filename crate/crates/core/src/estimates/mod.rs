//! Numerical checks of the pointwise, `L¹` and sup-norm estimates for the
//! wave kernels `k_λ^t` and their building block `G_λ`.
//!
//! The estimates carry unspecified constants, so every check fits the
//! constant (the largest ratio of measured value to envelope on a grid) and
//! then asks that the fit be finite and stable when the grid and the
//! quadrature are refined.

mod elementary;
mod envelope;
mod l1;
mod sobolev;
mod supnorm;

pub use elementary::{check_elementary_bounds, elementary_bounds, ElementaryBounds};
pub use envelope::{check_envelope, EnvelopeRegime, EnvelopeReport, EnvelopeSample, EnvelopeSpec, EnvelopeSweep};
pub use l1::{check_l1_growth, l1_norms, predicted_l1_exponent, L1Sample};
pub use sobolev::{check_hebisch_steger, hs_family, hs_integrals, hs_sobolev_order, sobolev_norm, SpectralFunction};
pub use supnorm::{check_supnorm, supnorm, supnorm_envelope, SupSample};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quadrature::QuadSpec;
use crate::spectral::{default_l, MultiplierProfile, SpectralTable};

/// Decay order `N` used by envelope checks unless overridden.
pub const DEFAULT_DECAY_ORDER: u32 = 4;
/// Largest relative change of a fitted constant under grid refinement.
pub const STABILITY_DRIFT: f64 = 0.2;
/// Allowed distance between a fitted and a predicted growth exponent.
pub const EXPONENT_BAND: f64 = 0.3;
/// Kernels are treated as negligible once `λ|ρ|` exceeds this.
pub const DECAY_WINDOW: f64 = 64.0;

/// Least-squares slope of `ln y` against `ln x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub exponent: f64,
    pub std_error: f64,
    pub intercept: f64,
    pub predicted: f64,
}

impl ExponentFit {
    /// Two-sided agreement with the predicted exponent.
    pub fn within_band(&self) -> bool {
        (self.exponent - self.predicted).abs() <= EXPONENT_BAND
    }
}

/// Fit `y ≈ e^{c} x^{p}`; the standard error is zero for two points.
pub fn log_log_fit(xs: &[f64], ys: &[f64], predicted: f64) -> Result<ExponentFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(invalid("grid", "need at least two points for a growth fit"));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(invalid("grid", "growth fit needs positive finite data"));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(invalid("grid", "growth fit needs distinct abscissae"));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let p = sxy / sxx;
    let c = my - p * mx;
    let std_error = if lx.len() > 2 {
        let rss: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - c - p * x).powi(2)).sum();
        (rss / (m - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(ExponentFit { exponent: p, std_error, intercept: c, predicted })
}

/// Outcome of one verification run, with the sampled data as a table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub check: String,
    pub grid: String,
    /// Largest ratio of measured value to envelope.
    pub fitted_constant: f64,
    /// The same fit on the refined grid, when one was run.
    pub refined_constant: Option<f64>,
    pub growth_exponent_fit: Option<ExponentFit>,
    pub pass: bool,
    pub runtime_seconds: f64,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl EstimateReport {
    /// Relative change between the coarse and refined fits.
    pub fn drift(&self) -> Option<f64> {
        self.refined_constant.map(|r| relative_drift(self.fitted_constant, r))
    }
}

pub(crate) fn relative_drift(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Band profile for `λ ≥ 1`, low-pass profile below.
pub fn wave_profile(lambda: f64) -> MultiplierProfile {
    if lambda >= 1.0 {
        MultiplierProfile::bump_band()
    } else {
        MultiplierProfile::bump_low()
    }
}

pub(crate) fn wave_table(n: usize, r: f64, psi: &MultiplierProfile, lambda: f64, max_rho: f64, quad: &QuadSpec) -> Result<SpectralTable> {
    SpectralTable::for_wave(n, default_l(n), r, psi, lambda, max_rho, quad)
}

/// The same accuracy request one hundred times tighter, floored near roundoff.
pub(crate) fn refined_quad(quad: &QuadSpec) -> QuadSpec {
    QuadSpec { rel_tol: (quad.rel_tol * 1e-2).max(1e-13), ..quad.clone() }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n", "must be at least 1"));
    }
    Ok(())
}

pub(crate) fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(invalid(name, format!("must be positive and finite, got {v}")));
    }
    Ok(())
}

/// Gauss–Legendre nodes of order `order` on panels of width at most `h`
/// covering `[a, b]`.
pub(crate) fn panel_grid(a: f64, b: f64, h: f64, order: usize) -> Vec<(f64, f64)> {
    let gl = crate::special::GaussLegendre::new(order);
    let count = ((b - a) / h).ceil().max(1.0) as usize;
    let w = (b - a) / count as f64;
    let mut out = Vec::with_capacity(count * order);
    for k in 0..count {
        let lo = a + k as f64 * w;
        out.extend(gl.mapped(lo, lo + w));
    }
    out
}

//! Weighted `L¹` norms of the kernels of `F(L/λ²)` for `F` supported in
//! `[1, 2]`, compared with the Sobolev norm `‖F‖_{H(s)}`.
//!
//! `‖F‖_{H(s)}` is computed as `(∫ |f̂(ξ)|² (1 + |ξ|)^{2s} dξ)^{1/2}` with
//! `f(v) = F(v²)` and `f̂(ξ) = ∫ f(v) e^{-iξv} dv`.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::{check_dim, check_positive, panel_grid, EstimateReport, DECAY_WINDOW};
use crate::error::{invalid, Result};
use crate::group::radial_density;
use crate::quadrature::QuadSpec;
use crate::special::{smoothstep, GaussLegendre};
use crate::spectral::{default_l, MultiplierProfile, SpectralTable};

/// Frequencies beyond this carry a negligible share of `‖F‖_{H(s)}` for the
/// `C⁷` profiles used here.
const XI_MAX: f64 = 600.0;

type SpectralFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function `F` on `[1, 2]`, smooth between its breakpoints.
#[derive(Clone)]
pub struct SpectralFunction {
    pub name: String,
    pub breakpoints: Vec<f64>,
    func: SpectralFn,
}

impl fmt::Debug for SpectralFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralFunction").field("name", &self.name).field("breakpoints", &self.breakpoints).finish()
    }
}

impl SpectralFunction {
    pub fn new<F>(name: &str, breakpoints: Vec<f64>, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let ok = breakpoints.len() >= 2
            && breakpoints.windows(2).all(|w| w[1] > w[0])
            && breakpoints[0] >= 1.0
            && *breakpoints.last().unwrap() <= 2.0;
        if !ok {
            return Err(invalid("breakpoints", "need increasing breakpoints inside [1, 2]"));
        }
        Ok(SpectralFunction { name: name.to_string(), breakpoints, func: Arc::new(f) })
    }

    pub fn zero() -> Self {
        SpectralFunction { name: "zero".into(), breakpoints: vec![1.0, 2.0], func: Arc::new(|_| 0.0) }
    }

    /// `F(u)`, zero outside the breakpoints.
    pub fn eval(&self, u: f64) -> f64 {
        if u < self.breakpoints[0] || u > *self.breakpoints.last().unwrap() {
            0.0
        } else {
            (self.func)(u)
        }
    }
}

fn bump(u: f64, a: f64, rise: f64, b: f64, fall: f64) -> f64 {
    smoothstep((u - a) / rise) * (1.0 - smoothstep((u - b) / fall))
}

/// Five smoothstep bumps in `[1, 2]`: centred, narrow, plateau, modulated,
/// and skewed.
pub fn hs_family() -> Vec<SpectralFunction> {
    let mk = |name: &str, bp: Vec<f64>, f: fn(f64) -> f64| SpectralFunction::new(name, bp, f).expect("valid breakpoints");
    vec![
        mk("bump", vec![1.0, 1.5, 2.0], |u| bump(u, 1.0, 0.5, 1.5, 0.5)),
        mk("narrow", vec![1.25, 1.5, 1.75], |u| bump(u, 1.25, 0.25, 1.5, 0.25)),
        mk("plateau", vec![1.0, 1.2, 1.8, 2.0], |u| bump(u, 1.0, 0.2, 1.8, 0.2)),
        mk("modulated", vec![1.0, 1.5, 2.0], |u| bump(u, 1.0, 0.5, 1.5, 0.5) * (6.0 * std::f64::consts::PI * u).cos()),
        mk("skewed", vec![1.0, 1.8, 2.0], |u| bump(u, 1.0, 0.8, 1.8, 0.2)),
    ]
}

/// The Sobolev order used for `λ ≤ 1` and `λ > 1`: `3/2 + ε + 0.1` and
/// `max(3/2, (n+1)/2) + ε + 0.1`.
pub fn hs_sobolev_order(n: usize, lambda: f64, epsilon: f64) -> f64 {
    let base = if lambda <= 1.0 { 1.5 } else { 1.5f64.max(0.5 * (n as f64 + 1.0)) };
    base + epsilon + 0.1
}

fn v_pieces(f: &SpectralFunction) -> Vec<f64> {
    f.breakpoints.iter().map(|u| u.sqrt()).collect()
}

/// `f̂(ξ) = 2 ∫ F(v²) cos(ξv) dv` over `v ≥ 0`.
fn fourier_even(f: &SpectralFunction, pieces: &[f64], xi: f64) -> f64 {
    let gl = GaussLegendre::order20();
    let mut sum = 0.0;
    for w in pieces.windows(2) {
        let (a, b) = (w[0], w[1]);
        let count = (((b - a) * xi.abs() / 4.0).ceil() as usize).max(1);
        let h = (b - a) / count as f64;
        for k in 0..count {
            let lo = a + k as f64 * h;
            for (v, wt) in gl.mapped(lo, lo + h) {
                sum += wt * f.eval(v * v) * (xi * v).cos();
            }
        }
    }
    2.0 * sum
}

/// `‖F‖_{H(s)}` through `f(v) = F(v²)`.
pub fn sobolev_norm(f: &SpectralFunction, s: f64) -> f64 {
    let pieces = v_pieces(f);
    let total: f64 = panel_grid(0.0, XI_MAX, 2.0, 20)
        .par_iter()
        .map(|&(xi, w)| w * fourier_even(f, &pieces, xi).powi(2) * (1.0 + xi).powf(2.0 * s))
        .collect::<Vec<f64>>()
        .iter()
        .sum();
    (2.0 * total).sqrt()
}

/// `∫_G |F(L/λ²) δ₀| (1 + λR)^ε` for each `F` of the family, through one
/// shared table of `F_R` per radius. The multiplier is `ψ(s/λ) F(s²/λ²)`
/// with the wide bump `ψ`, which is 1 on the support of `F(s²)`.
pub fn hs_integrals(n: usize, family: &[SpectralFunction], lambda: f64, epsilon: f64, quad: &QuadSpec) -> Result<Vec<f64>> {
    check_dim(n)?;
    check_positive("lambda", lambda)?;
    if !(epsilon >= 0.0) {
        return Err(invalid("epsilon", format!("must be nonnegative, got {epsilon}")));
    }
    let mut pieces: Vec<f64> = family.iter().flat_map(|f| f.breakpoints.iter().map(|u| lambda * u.sqrt())).collect();
    pieces.sort_by(f64::total_cmp);
    pieces.dedup();
    let wide = MultiplierProfile::bump_wide();
    let half_n = 0.5 * n as f64;
    let nodes = panel_grid(0.0, DECAY_WINDOW / lambda, 0.5 / lambda, 8);
    let rows: Vec<Result<Vec<f64>>> = nodes
        .par_iter()
        .map(|&(r, w)| {
            let mut table = SpectralTable::build(n, default_l(n), r, |_| 1.0, &pieces, r, quad)?;
            let jw = radial_density(n, r)?.value * (1.0 + lambda * r).powf(epsilon) * w;
            Ok(family
                .iter()
                .map(|f| {
                    table.profile = table
                        .nodes
                        .iter()
                        .map(|&s| {
                            let v = s / lambda;
                            wide.eval(v) * f.eval(v * v)
                        })
                        .collect();
                    let k = 2.0 * table.g(r) * (-half_n * r).exp();
                    jw * k.abs()
                })
                .collect())
        })
        .collect();
    let mut sums = vec![0.0; family.len()];
    for row in rows {
        for (s, v) in sums.iter_mut().zip(row?) {
            *s += v;
        }
    }
    Ok(sums)
}

/// Ratio of the weighted kernel norm to `‖F‖_{H(s)}` over the family; pass
/// iff every ratio is finite.
pub fn check_hebisch_steger(
    n: usize,
    family: &[SpectralFunction],
    lambda: f64,
    epsilon: f64,
    s_order: f64,
    quad: &QuadSpec,
) -> Result<EstimateReport> {
    let start = Instant::now();
    if family.is_empty() {
        return Err(invalid("family", "need at least one function"));
    }
    let integrals = hs_integrals(n, family, lambda, epsilon, quad)?;
    let norms: Vec<f64> = family.iter().map(|f| sobolev_norm(f, s_order)).collect();
    let ratios: Vec<f64> = integrals.iter().zip(&norms).map(|(&i, &h)| if i == 0.0 && h == 0.0 { 0.0 } else { i / h }).collect();
    Ok(EstimateReport {
        check: format!("hebisch-steger/n={n}/lambda={lambda}/eps={epsilon}/s={s_order}"),
        grid: format!("family={:?}", family.iter().map(|f| f.name.as_str()).collect::<Vec<_>>()),
        fitted_constant: ratios.iter().cloned().fold(0.0, f64::max),
        refined_constant: None,
        growth_exponent_fit: None,
        pass: ratios.iter().all(|r| r.is_finite()),
        runtime_seconds: start.elapsed().as_secs_f64(),
        columns: ["index", "integral", "sobolev_norm", "ratio"].map(String::from).to_vec(),
        rows: (0..family.len()).map(|i| vec![i as f64, integrals[i], norms[i], ratios[i]]).collect(),
    })
}

//! Kernels of spectral multipliers `m(√L)` through the subordination formula
//!
//! ```text
//! k_m(x, y) = c_l e^{-nx/2} ∫_ℝ m(s) F_R(s) s ds,
//! F_R(ζ)    = ∫_R^∞ D^l_sh[e^{iζv}] (ch v - ch R)^{l - n/2} dv,
//! c_l       = (-1)^l / (πi) · 2^{-1-n/2} π^{-n/2} / Γ(l - n/2 + 1),
//! ```
//!
//! and the wave kernels `k_λ^t = e^{-nx/2} e^{-nR/2} [G_λ(R, R-t) + G_λ(R, R+t)]`
//! of `ψ(√L/λ) cos(t√L)`, where
//! `G_λ(R, ρ) = (c_l/2) e^{nR/2} ∫ ψ(s/λ) F_R(s) s e^{i(ρ-R)s} ds`.
//!
//! For even profiles all of these are real; they are evaluated on `s ≥ 0`
//! using `F_R(-s) = conj F_R(s)`.

pub mod profile;

pub use profile::{DilatedProfile, MultiplierProfile, ProfileKind};

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsh::DshTable;
use crate::error::{invalid, Result};
use crate::group::{radial_distance, GroupPoint};
use crate::quadrature::{integrate_singular_osc, QuadResult, QuadSpec};
use crate::resolvent::{dsh_profile_integral, resolvent_constant};
use crate::special::{recip_gamma, GaussLegendre};

pub use crate::resolvent::default_l;

/// Largest phase change allowed across one Gauss–Legendre panel in `s`.
const MAX_PANEL_PHASE: f64 = 8.0;
/// Largest panel width in `s`; `F_R` is analytic in a strip of height `n/2`.
const MAX_PANEL_WIDTH: f64 = 1.0;

pub fn check_l(n: usize, l: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n", "must be at least 1"));
    }
    if !(l as f64 - 0.5 * n as f64 > -1.0) {
        return Err(invalid("l", format!("need l > n/2 - 1, got n = {n}, l = {l}")));
    }
    Ok(())
}

/// The real number `A` with `c_l = A / i`.
pub fn c_l_real(n: usize, l: usize) -> f64 {
    let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign / PI * resolvent_constant(n) * recip_gamma(l as f64 - 0.5 * n as f64 + 1.0)
}

/// `c_l = (-1)^l/(πi) · 2^{-1-n/2} π^{-n/2} / Γ(l - n/2 + 1)`.
pub fn c_l(n: usize, l: usize) -> Complex64 {
    Complex64::new(0.0, -c_l_real(n, l))
}

/// `e^{log_scale} F_R(ζ)` for complex `ζ` with `Im ζ > -n/2`.
pub fn f_r_scaled(n: usize, l: usize, r: f64, zeta: Complex64, log_scale: f64, quad: &QuadSpec) -> Result<QuadResult> {
    check_l(n, l)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid("R", format!("must be positive, got {r}")));
    }
    dsh_profile_integral(n as f64, l, Complex64::i() * zeta, r, log_scale, quad)
}

/// `F_R(s)` for real `s`.
pub fn f_r(n: usize, l: usize, r: f64, s: f64, quad: &QuadSpec) -> Result<Complex64> {
    Ok(f_r_scaled(n, l, r, Complex64::new(s, 0.0), 0.0, quad)?.value)
}

/// `F_R(ζ)` off the real axis (the contour `ζ = s + iδ`).
pub fn f_r_complex(n: usize, l: usize, r: f64, zeta: Complex64, quad: &QuadSpec) -> Result<Complex64> {
    if !(zeta.im > -0.5 * n as f64) {
        return Err(invalid("zeta", format!("need Im ζ > -n/2, got {zeta}")));
    }
    Ok(f_r_scaled(n, l, r, zeta, 0.0, quad)?.value)
}

/// `F̃_R(s) = ∫_R^∞ D^l[sin(sv)] (ch v - ch R)^{l-n/2} dv = Im F_R(s)`.
///
/// For `|s| ≤ 1` the sine integrand is integrated directly, which keeps
/// relative accuracy as `s → 0`.
pub fn f_r_sin(n: usize, l: usize, r: f64, s: f64, quad: &QuadSpec) -> Result<f64> {
    check_l(n, l)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    if s.abs() > 1.0 {
        return Ok(f_r(n, l, r, s, quad)?.im);
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid("R", format!("must be positive, got {r}")));
    }
    let table = DshTable::get(l);
    let amp = |v: f64| Complex64::new(table.apply_sin(s, v), 0.0);
    let beta = l as f64 - 0.5 * n as f64;
    let kappa = 0.5 * n as f64;
    let q = QuadSpec { decay_rate: Some(quad.decay_rate.map_or(kappa, |k| k.min(kappa))), ..quad.clone() };
    Ok(integrate_singular_osc(amp, beta, r, 0.0, f64::INFINITY, &q)?.value.re)
}

/// Gauss–Legendre nodes on `[lo, hi]` with panels short enough for the
/// given phase rate.
fn panel_nodes(pieces: &[f64], rate: f64) -> (Vec<f64>, Vec<f64>) {
    let gl = GaussLegendre::order20();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for w in pieces.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        let len = b - a;
        let count = ((len * rate / MAX_PANEL_PHASE).ceil() as usize)
            .max((len / MAX_PANEL_WIDTH).ceil() as usize)
            .max(1);
        let h = len / count as f64;
        for k in 0..count {
            let lo = a + k as f64 * h;
            for (x, wt) in gl.mapped(lo, lo + h) {
                nodes.push(x);
                weights.push(wt);
            }
        }
    }
    (nodes, weights)
}

/// `e^{nR/2} F_R(s)` on quadrature nodes covering the support of a profile,
/// reusable for every `ρ` with `|ρ| ≤ max_rho`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralTable {
    pub n: usize,
    pub l: usize,
    pub r: f64,
    pub max_rho: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Profile values at the nodes.
    pub profile: Vec<f64>,
    /// `e^{nR/2} F_R(s)`.
    pub scaled_f: Vec<Complex64>,
    /// Quadrature error estimates of `scaled_f`.
    pub errors: Vec<f64>,
}

impl SpectralTable {
    /// Table for `m(s)` with smooth pieces between `pieces` (on `s ≥ 0`).
    pub fn build<M>(n: usize, l: usize, r: f64, m: M, pieces: &[f64], max_rho: f64, quad: &QuadSpec) -> Result<Self>
    where
        M: Fn(f64) -> f64 + Sync,
    {
        check_l(n, l)?;
        let rate = max_rho.abs() + r + 1.0;
        let (nodes, weights) = panel_nodes(pieces, rate);
        let profile: Vec<f64> = nodes.iter().map(|&s| m(s)).collect();
        let log_scale = 0.5 * n as f64 * r;
        let vals: Vec<Result<QuadResult>> = nodes
            .par_iter()
            .zip(profile.par_iter())
            .map(|(&s, &p)| {
                if p == 0.0 {
                    return Ok(QuadResult { value: Complex64::new(0.0, 0.0), error_estimate: 0.0, subdivisions_used: 0, truncation_point: r });
                }
                f_r_scaled(n, l, r, Complex64::new(s, 0.0), log_scale, quad)
            })
            .collect();
        let mut scaled_f = Vec::with_capacity(vals.len());
        let mut errors = Vec::with_capacity(vals.len());
        for v in vals {
            let v = v?;
            scaled_f.push(v.value);
            errors.push(v.error_estimate);
        }
        Ok(SpectralTable { n, l, r, max_rho, nodes, weights, profile, scaled_f, errors })
    }

    /// Table for the wave profile `ψ(s/λ)`.
    pub fn for_wave(n: usize, l: usize, r: f64, psi: &MultiplierProfile, lambda: f64, max_rho: f64, quad: &QuadSpec) -> Result<Self> {
        let d = psi.dilated(lambda);
        Self::build(n, l, r, |s| d.eval(s), &d.pieces(), max_rho, quad)
    }

    /// `G(R, ρ) = A e^{nR/2} ∫_0^∞ m(s) s Im(F_R(s) e^{i(ρ-R)s}) ds`.
    pub fn g(&self, rho: f64) -> f64 {
        self.g_with_error(rho).0
    }

    pub fn g_with_error(&self, rho: f64) -> (f64, f64) {
        let tau = rho - self.r;
        let mut sum = 0.0;
        let mut err = 0.0;
        for i in 0..self.nodes.len() {
            let s = self.nodes[i];
            let wm = self.weights[i] * self.profile[i] * s;
            let phase = Complex64::from_polar(1.0, tau * s);
            sum += wm * (self.scaled_f[i] * phase).im;
            err += wm.abs() * self.errors[i];
        }
        let a = c_l_real(self.n, self.l);
        (a * sum, a.abs() * err)
    }

    /// `H(R, ρ) = A e^{nR/2} ∫_0^∞ m(s) Re(F_R(s) e^{i(ρ-R)s}) ds`, the
    /// counterpart of `G` without the factor `s`, used for `sin(t√L)/√L`.
    pub fn h(&self, rho: f64) -> f64 {
        let tau = rho - self.r;
        let mut sum = 0.0;
        for i in 0..self.nodes.len() {
            let s = self.nodes[i];
            let phase = Complex64::from_polar(1.0, tau * s);
            sum += self.weights[i] * self.profile[i] * (self.scaled_f[i] * phase).re;
        }
        c_l_real(self.n, self.l) * sum
    }

    /// `e^{-nR/2}[G(R, R-t) + G(R, R+t)]`: the wave kernel without `e^{-nx/2}`.
    pub fn wave_radial(&self, t: f64) -> f64 {
        let damp = (-0.5 * self.n as f64 * self.r).exp();
        damp * (self.g(self.r - t) + self.g(self.r + t))
    }

    /// `e^{nR/2} ∫ m(s) F_R(s) s ds` over `s ≥ 0` as `2 A ∫ m Im F s`.
    pub fn multiplier_radial(&self) -> f64 {
        2.0 * self.g(self.r) * (-0.5 * self.n as f64 * self.r).exp()
    }
}

/// Kernel value together with its location and error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSample {
    pub n: usize,
    pub l: usize,
    pub r: f64,
    pub x: f64,
    pub value: Complex64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    /// `∫_0^∞ m(s) [F_R(s) - F_R(-s)] s ds` with `F̃_R`.
    HalfLine,
    /// `∫_ℝ m(s) F_R(s) s ds` with both signs of `s` evaluated separately.
    FullLine,
}

/// Radial part (without `e^{-nx/2}`) of the kernel of `m(√L)`.
pub fn multiplier_radial(
    n: usize,
    l: usize,
    psi: &MultiplierProfile,
    r: f64,
    path: Path,
    quad: &QuadSpec,
) -> Result<(Complex64, f64)> {
    check_l(n, l)?;
    if !(r > 0.0) {
        return Err(invalid("R", format!("must be positive, got {r}")));
    }
    let (nodes, weights) = panel_nodes(&psi.pieces, r + 1.0);
    let vals: Vec<Result<(Complex64, f64)>> = nodes
        .par_iter()
        .zip(weights.par_iter())
        .map(|(&s, &w)| {
            let m = psi.eval(s);
            if m == 0.0 {
                return Ok((Complex64::new(0.0, 0.0), 0.0));
            }
            match path {
                Path::HalfLine => {
                    let ft = f_r_sin(n, l, r, s, quad)?;
                    Ok((Complex64::new(0.0, 2.0 * w * m * s * ft), 0.0))
                }
                Path::FullLine => {
                    let plus = f_r_scaled(n, l, r, Complex64::new(s, 0.0), 0.0, quad)?;
                    let minus = f_r_scaled(n, l, r, Complex64::new(-s, 0.0), 0.0, quad)?;
                    let mminus = psi.eval(-s);
                    let v = (plus.value * m - minus.value * mminus) * (w * s);
                    Ok((v, (w * s).abs() * (m.abs() * plus.error_estimate + mminus.abs() * minus.error_estimate)))
                }
            }
        })
        .collect();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for v in vals {
        let (a, e) = v?;
        sum += a;
        err += e;
    }
    let c = c_l(n, l);
    Ok((c * sum, c.norm() * err))
}

/// Kernel `k_m(x, y)` of `m(√L)` by subordination.
pub fn multiplier_kernel(n: usize, l: usize, psi: &MultiplierProfile, g: &GroupPoint, quad: &QuadSpec) -> Result<KernelSample> {
    if g.n() != n {
        return Err(crate::Error::DimensionMismatch { expected: n, found: g.n() });
    }
    let r = radial_distance(g);
    let (v, e) = multiplier_radial(n, l, psi, r, Path::HalfLine, quad)?;
    let w = (-0.5 * n as f64 * g.x).exp();
    Ok(KernelSample { n, l, r, x: g.x, value: v * w, error_estimate: e * w })
}

/// Kernel from the contour `ζ = s + iδ` with an analytic multiplier `Ψ(ζ)`
/// (the function whose restriction to the real line is `m(s) = Ψ(s²)`):
/// `c_l e^{-nx/2} ∫_ℝ Ψ((s+iδ)²) F_R(s+iδ) (s+iδ) ds` over `|s| ≤ s_max`.
pub fn contour_kernel<P>(
    n: usize,
    l: usize,
    psi: P,
    delta: f64,
    s_max: f64,
    g: &GroupPoint,
    quad: &QuadSpec,
) -> Result<Complex64>
where
    P: Fn(Complex64) -> Complex64 + Sync,
{
    check_l(n, l)?;
    if !(delta > 0.0) || !(delta < 0.5 * n as f64) {
        return Err(invalid("delta", format!("need 0 < δ < n/2, got {delta}")));
    }
    let r = radial_distance(g);
    let (nodes, weights) = panel_nodes(&[-s_max, 0.0, s_max], r + 1.0);
    let vals: Vec<Result<Complex64>> = nodes
        .par_iter()
        .zip(weights.par_iter())
        .map(|(&s, &w)| {
            let zeta = Complex64::new(s, delta);
            let f = f_r_complex(n, l, r, zeta, quad)?;
            Ok(psi(zeta * zeta) * f * zeta * w)
        })
        .collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for v in vals {
        sum += v?;
    }
    Ok(c_l(n, l) * sum * (-0.5 * n as f64 * g.x).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveParams {
    pub n: usize,
    pub lambda: f64,
    pub t: f64,
    pub l: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveKernelSample {
    pub params: WaveParams,
    pub r: f64,
    pub x: f64,
    pub value: Complex64,
    /// `(G_λ(R, R-t), G_λ(R, R+t))`.
    pub g_values: (f64, f64),
    pub error_estimate: f64,
}

/// Band profiles for `λ ≥ 1`; low-pass profiles only below 1.
pub fn check_wave_profile(psi: &MultiplierProfile, lambda: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(invalid("lambda", format!("must be positive, got {lambda}")));
    }
    if !psi.even {
        return Err(invalid("psi", "wave kernels need an even profile"));
    }
    if lambda >= 1.0 && psi.kind == ProfileKind::BumpLow {
        return Err(invalid("psi", format!("λ = {lambda} ≥ 1 needs a profile vanishing near 0")));
    }
    Ok(())
}

/// Kernel of `ψ(√L/λ) cos(t√L)` at `g`.
pub fn wave_kernel(
    n: usize,
    l: usize,
    psi: &MultiplierProfile,
    lambda: f64,
    t: f64,
    g: &GroupPoint,
    quad: &QuadSpec,
) -> Result<WaveKernelSample> {
    check_wave_profile(psi, lambda)?;
    if g.n() != n {
        return Err(crate::Error::DimensionMismatch { expected: n, found: g.n() });
    }
    let r = radial_distance(g);
    if !(r > 0.0) {
        return Err(crate::Error::SingularAtIdentity);
    }
    let table = SpectralTable::for_wave(n, l, r, psi, lambda, r + t.abs(), quad)?;
    let (gm, em) = table.g_with_error(r - t);
    let (gp, ep) = table.g_with_error(r + t);
    let w = (-0.5 * n as f64 * (g.x + r)).exp();
    Ok(WaveKernelSample {
        params: WaveParams { n, lambda, t, l },
        r,
        x: g.x,
        value: Complex64::new(w * (gm + gp), 0.0),
        g_values: (gm, gp),
        error_estimate: w * (em + ep),
    })
}

/// `W_λ^t = k_λ^{t/λ}`, the kernel of `ψ(√L/λ) cos(t√L/λ)`.
pub fn wave_kernel_rescaled(
    n: usize,
    l: usize,
    psi: &MultiplierProfile,
    lambda: f64,
    t: f64,
    g: &GroupPoint,
    quad: &QuadSpec,
) -> Result<WaveKernelSample> {
    let mut s = wave_kernel(n, l, psi, lambda, t / lambda, g, quad)?;
    s.params.t = t;
    Ok(s)
}

/// Kernel of `ψ(√L/λ) sin(t√L)/√L`: `e^{-nx/2} e^{-nR/2} [H(R, R-t) - H(R, R+t)]`.
pub fn wave_kernel_sin(
    n: usize,
    l: usize,
    psi: &MultiplierProfile,
    lambda: f64,
    t: f64,
    g: &GroupPoint,
    quad: &QuadSpec,
) -> Result<Complex64> {
    check_wave_profile(psi, lambda)?;
    if g.n() != n {
        return Err(crate::Error::DimensionMismatch { expected: n, found: g.n() });
    }
    let r = radial_distance(g);
    if !(r > 0.0) {
        return Err(crate::Error::SingularAtIdentity);
    }
    let table = SpectralTable::for_wave(n, l, r, psi, lambda, r + t.abs(), quad)?;
    let w = (-0.5 * n as f64 * (g.x + r)).exp();
    Ok(Complex64::new(w * (table.h(r - t) - table.h(r + t)), 0.0))
}

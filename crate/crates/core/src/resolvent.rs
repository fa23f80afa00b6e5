//! The resolvent kernel of `L - λ` and the profile integral shared by every
//! kernel in the crate,
//!
//! ```text
//! I_l(μ; R) = ∫_R^∞ D^l_sh[e^{μv}] (ch v - ch R)^{l - n/2} dv,
//! ```
//!
//! which converges for `l - n/2 > -1` and `Re μ < n/2`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dsh::DshTable;
use crate::error::{invalid, Error, Result};
use crate::group::{integrate_radial_finite, radial_distance, GroupPoint};
use crate::quadrature::{integrate_singular_osc, QuadResult, QuadSpec};
use crate::special::{gamma, recip_gamma};

/// `l` with `l - n/2 ∈ {-1/2, 0}`.
pub fn default_l(n: usize) -> usize {
    n / 2
}

/// `e^{log_scale} · ∫_R^∞ D^l[e^{μv}] (ch v - ch R)^{l - dim/2} dv`.
///
/// `dim` may be fractional. The optional `log_scale` is folded into the
/// integrand so large-`R` values neither overflow nor underflow.
pub fn dsh_profile_integral(
    dim: f64,
    l: usize,
    mu: Complex64,
    r: f64,
    log_scale: f64,
    quad: &QuadSpec,
) -> Result<QuadResult> {
    let beta = l as f64 - 0.5 * dim;
    if !(beta > -1.0) {
        return Err(invalid("l", format!("need l - n/2 > -1, got l = {l}, n = {dim}")));
    }
    let kappa = 0.5 * dim - mu.re;
    if !(kappa > 0.0) {
        return Err(invalid("mu", format!("need Re(mu) < n/2, got {mu}")));
    }
    let table = DshTable::get(l);
    let lf = l as f64;
    let amp = |v: f64| {
        let damp = ((mu.re - lf) * v + log_scale).exp();
        table.scaled_amplitude(mu, v) * damp
    };
    let decay = quad.decay_rate.map_or(kappa, |k| k.min(kappa));
    let q = QuadSpec { decay_rate: Some(decay), ..quad.clone() };
    integrate_singular_osc(amp, beta, r, mu.im, f64::INFINITY, &q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolventParams {
    pub n: usize,
    pub lambda: Complex64,
    pub nu: Complex64,
    pub l: usize,
}

impl ResolventParams {
    /// `ν = i√λ` with the branch chosen so that `Re ν < 0`.
    pub fn from_lambda(n: usize, lambda: Complex64) -> Result<Self> {
        let nu = Complex64::i() * lambda.sqrt();
        let nu = if nu.re > 0.0 { -nu } else { nu };
        if !(nu.re < 0.0) {
            return Err(invalid("lambda", format!("must lie off [0, ∞), got {lambda}")));
        }
        Self::from_nu(n, nu)
    }

    /// Parameters from `ν` directly, `λ = -ν²`.
    pub fn from_nu(n: usize, nu: Complex64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n", "must be at least 1"));
        }
        if !(nu.re < 0.0) {
            return Err(invalid("nu", format!("need Re(nu) < 0, got {nu}")));
        }
        Ok(ResolventParams { n, lambda: -nu * nu, nu, l: default_l(n) })
    }

    pub fn with_l(mut self, l: usize) -> Result<Self> {
        if !(l as f64 - 0.5 * self.n as f64 > -1.0) {
            return Err(invalid("l", format!("need l - n/2 > -1, got l = {l}")));
        }
        self.l = l;
        Ok(self)
    }
}

/// `(-1)^l Γ(l - n/2 + 1)^{-1} I_l(ν; R)`: the continued form of
/// `Γ(1 - n/2)^{-1} f₀(ch R)`, for possibly fractional `dim`.
pub fn f0_profile_dim(dim: f64, l: usize, nu: Complex64, r: f64, quad: &QuadSpec) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(invalid("R", format!("must be positive, got {r}")));
    }
    let res = dsh_profile_integral(dim, l, nu, r, 0.0, quad)?;
    let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(res.value * sign * recip_gamma(l as f64 - 0.5 * dim + 1.0))
}

pub fn f0_profile(p: &ResolventParams, r: f64, quad: &QuadSpec) -> Result<Complex64> {
    f0_profile_dim(p.n as f64, p.l, p.nu, r, quad)
}

/// Leading small-`R` behaviour of [`f0_profile`]:
/// `2^{n/2-1} π^{-1/2} Γ((n-1)/2) R^{1-n}`, or `2^{1/2} π^{-1/2} |ln R|` for `n = 1`.
pub fn f0_small_r_leading(n: usize, r: f64) -> f64 {
    if n == 1 {
        (2.0 / PI).sqrt() * r.ln().abs()
    } else {
        let nf = n as f64;
        2f64.powf(0.5 * nf - 1.0) / PI.sqrt() * gamma(0.5 * (nf - 1.0)) * r.powf(1.0 - nf)
    }
}

/// `2^{-1-n/2} π^{-n/2}`: the kernel constant in front of the continued profile.
pub fn resolvent_constant(n: usize) -> f64 {
    let nf = n as f64;
    2f64.powf(-1.0 - 0.5 * nf) * PI.powf(-0.5 * nf)
}

/// Kernel value without the `e^{-nx/2}` factor, as a function of `R`.
pub fn resolvent_radial(p: &ResolventParams, r: f64, quad: &QuadSpec) -> Result<Complex64> {
    if r == 0.0 {
        return Err(Error::SingularAtIdentity);
    }
    Ok(f0_profile(p, r, quad)? * resolvent_constant(p.n))
}

/// `k(x, y)` for the resolvent `(L - λ)^{-1}`.
pub fn resolvent_kernel(p: &ResolventParams, g: &GroupPoint, quad: &QuadSpec) -> Result<Complex64> {
    if g.n() != p.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: g.n() });
    }
    let r = radial_distance(g);
    if r == 0.0 {
        return Err(Error::SingularAtIdentity);
    }
    let weight = (-0.5 * p.n as f64 * g.x).exp();
    Ok(resolvent_radial(p, r, quad)? * weight)
}

/// Step used by the acceptance sweep for [`ode_residual`].
pub fn default_ode_step(d: f64) -> f64 {
    1e-2 * (d - 1.0)
}

/// Relative residual of `-n²/4 f - (n+1) d f' - (d²-1) f'' = λ f` for the
/// profile `f(d) = f0(arcch d)`, derivatives by fourth-order central
/// differences with step `h`.
pub fn ode_residual(p: &ResolventParams, d: f64, h: f64, quad: &QuadSpec) -> Result<f64> {
    if !(d > 1.0) {
        return Err(invalid("d", format!("must exceed 1, got {d}")));
    }
    if !(h > 0.0) || !(d - 1.0 > 10.0 * h) {
        return Err(invalid("h", format!("need 0 < 10h < d - 1, got h = {h}, d = {d}")));
    }
    let f = |dd: f64| f0_profile(p, dd.acosh(), quad);
    let fm2 = f(d - 2.0 * h)?;
    let fm1 = f(d - h)?;
    let f0 = f(d)?;
    let fp1 = f(d + h)?;
    let fp2 = f(d + 2.0 * h)?;
    let d1 = (fm2 - fp2 + (fp1 - fm1) * 8.0) / (12.0 * h);
    let d2 = (-(fm2 + fp2) + (fm1 + fp1) * 16.0 - f0 * 30.0) / (12.0 * h * h);
    let nf = p.n as f64;
    let lhs = -f0 * (nf * nf / 4.0) - d1 * ((nf + 1.0) * d) - d2 * (d * d - 1.0);
    let rhs = p.lambda * f0;
    let floor = 1e-300;
    Ok((lhs - rhs).norm() / (rhs.norm() + floor))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct L1Report {
    pub r_max: f64,
    /// `∫_{B_R} |k|`.
    pub integral: f64,
    pub error_estimate: f64,
    /// `(1+|ν|)^{n/2} [1 + ∫_0^R e^{Re(ν) r} r dr]`.
    pub bound: f64,
    pub ratio: f64,
}

/// `∫_0^R e^{ar} r dr` for `a < 0`.
fn exp_moment(a: f64, r: f64) -> f64 {
    ((a * r).exp() * (a * r - 1.0) + 1.0) / (a * a)
}

/// `∫_{B_R} |k|` against the envelope `(1+|ν|)^{n/2}[1 + ∫_0^R e^{Re ν r} r dr]`.
pub fn weighted_l1_resolvent(p: &ResolventParams, r_max: f64, quad: &QuadSpec) -> Result<L1Report> {
    if !(r_max > 0.0) {
        return Err(invalid("R_max", format!("must be positive, got {r_max}")));
    }
    let inner = QuadSpec { rel_tol: 1e-10, ..QuadSpec::default() };
    let g = |r: f64| resolvent_radial(p, r, &inner).map(|k| k.norm()).unwrap_or(f64::NAN);
    let res = integrate_radial_finite(p.n, g, r_max, quad)?;
    let nf = p.n as f64;
    let bound = (1.0 + p.nu.norm()).powf(0.5 * nf) * (1.0 + exp_moment(p.nu.re, r_max));
    let integral = res.value.re;
    Ok(L1Report { r_max, integral, error_estimate: res.error_estimate, bound, ratio: integral / bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QuadSpec {
        QuadSpec::with_tol(1e-12)
    }

    #[test]
    fn n2_closed_form() {
        let nu = Complex64::new(-0.5, -0.5);
        let p = ResolventParams::from_nu(2, nu).unwrap();
        for &r in &[1e-3, 0.2, 1.0, 4.0, 12.0] {
            let got = f0_profile(&p, r, &q()).unwrap();
            let want = (nu * r).exp() / r.sinh();
            assert!((got - want).norm() <= 1e-10 * want.norm(), "R = {r}: {got} vs {want}");
        }
    }

    #[test]
    fn branch_of_nu() {
        let p = ResolventParams::from_lambda(2, Complex64::new(-1.0, 0.0)).unwrap();
        assert!((p.nu - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let p = ResolventParams::from_lambda(3, Complex64::new(2.0, 1.0)).unwrap();
        assert!(p.nu.re < 0.0);
        assert!((-p.nu * p.nu - p.lambda).norm() < 1e-14);
        assert!(ResolventParams::from_lambda(2, Complex64::new(4.0, 0.0)).is_err());
        assert_eq!(p.l, 1);
        assert!(p.with_l(0).is_err());
    }

    #[test]
    fn continuation_one_step() {
        // n = 3: l = 1 and l = 2 describe the same function
        let nu = Complex64::new(-1.0, 0.0);
        for &r in &[0.05, 0.7, 3.0] {
            let a = f0_profile_dim(3.0, 1, nu, r, &q()).unwrap();
            let b = f0_profile_dim(3.0, 2, nu, r, &q()).unwrap();
            assert!((a - b).norm() <= 1e-9 * a.norm(), "R = {r}: {a} vs {b}");
        }
    }

    #[test]
    fn identity_is_rejected() {
        let p = ResolventParams::from_nu(2, Complex64::new(-1.0, 0.0)).unwrap();
        let e = GroupPoint::identity(2);
        assert_eq!(resolvent_kernel(&p, &e, &q()), Err(Error::SingularAtIdentity));
        let g = GroupPoint::new(0.1, vec![0.0]).unwrap();
        assert!(matches!(resolvent_kernel(&p, &g, &q()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn exp_moment_matches_quadrature() {
        let (a, r) = (-0.7_f64, 3.0_f64);
        let n = 2000;
        let h = r / n as f64;
        let mid: f64 = (0..n).map(|k| {
            let x = (k as f64 + 0.5) * h;
            (a * x).exp() * x * h
        }).sum();
        assert!((exp_moment(a, r) - mid).abs() < 1e-6);
    }
}

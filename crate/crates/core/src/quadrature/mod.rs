//! One-dimensional quadrature for integrals of the form
//! `∫_a^{upper} f(v) · (weight)^β · e^{isv} dv` where the weight vanishes
//! linearly at `a`, `f` is smooth, and `upper` may be `+∞` for exponentially
//! decaying integrands.
//!
//! Endpoint singularities are removed by `v = a + u^p`, oscillation is handled
//! by Filon–Legendre panels once a panel spans more than one period, and
//! semi-infinite tails are truncated using the caller's decay rate.

mod adaptive;
mod rules;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use adaptive::{adapt, Accum, OscIntegrand, Tolerance};

/// Accuracy controls shared by all integrators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on the number of panels per adaptive pass.
    pub max_subdivisions: usize,
    /// Truncate a tail once its bound is this many decades below the total.
    pub tail_cutoff_decades: f64,
    pub oscillation_hint: Option<f64>,
    /// Exponential decay rate `κ` with `|f(v)| ≲ e^{-κv}`; needed for `+∞`.
    pub decay_rate: Option<f64>,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_subdivisions: 4000,
            tail_cutoff_decades: 16.0,
            oscillation_hint: None,
            decay_rate: None,
        }
    }
}

impl QuadSpec {
    pub fn with_tol(rel_tol: f64) -> Self {
        QuadSpec { rel_tol, ..Self::default() }
    }

    pub fn decay(mut self, kappa: f64) -> Self {
        self.decay_rate = Some(kappa);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(invalid("rel_tol", format!("must be positive, got {}", self.rel_tol)));
        }
        if !(self.abs_tol > 0.0) {
            return Err(invalid("abs_tol", format!("must be positive, got {}", self.abs_tol)));
        }
        if self.max_subdivisions == 0 {
            return Err(invalid("max_subdivisions", "must be at least 1"));
        }
        if !(self.tail_cutoff_decades > 0.0) {
            return Err(invalid("tail_cutoff_decades", "must be positive"));
        }
        if let Some(k) = self.decay_rate {
            if !(k > 0.0) || !k.is_finite() {
                return Err(invalid("decay_rate", format!("must be positive and finite, got {k}")));
            }
        }
        Ok(())
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance { abs: self.abs_tol, rel: self.rel_tol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
    /// Where the integral was cut off (`upper` itself when finite).
    pub truncation_point: f64,
}

/// `ln sh x` without overflow for large `x`.
pub(crate) fn ln_sinh(x: f64) -> f64 {
    if x > 1.0 {
        x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
    } else {
        x.sinh().ln()
    }
}

/// Smallest `q ≤ 16` with `qβ` an integer, if any.
fn rational_denominator(beta: f64) -> Option<u32> {
    (1..=16u32).find(|&q| {
        let x = q as f64 * beta;
        (x - x.round()).abs() < 1e-12
    })
}

/// Substitution exponent `p` in `v = a + u^p`.
fn substitution_power(beta: f64) -> u32 {
    match rational_denominator(beta) {
        Some(q) => q,
        None => (2.0 / (1.0 + beta)).ceil() as u32,
    }
}

struct Problem<'a> {
    amp: &'a dyn Fn(f64) -> Complex64,
    beta: f64,
    /// `ln G(w)` where the weight is `(w·G(w))^β`, `w = v - a`.
    log_factor: &'a dyn Fn(f64) -> f64,
    a: f64,
    upper: f64,
    freq: f64,
}

impl Problem<'_> {
    fn weight(&self, v: f64) -> f64 {
        if self.beta == 0.0 {
            return 1.0;
        }
        let w = v - self.a;
        (self.beta * (w.ln() + (self.log_factor)(w))).exp()
    }

    fn full_amp(&self, v: f64) -> Complex64 {
        (self.amp)(v) * self.weight(v)
    }

    fn envelope(&self, lo: f64, hi: f64) -> f64 {
        (0..=4)
            .map(|k| {
                let v = lo + (hi - lo) * k as f64 / 4.0;
                self.full_amp(v).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn solve(p: &Problem<'_>, quad: &QuadSpec) -> Result<QuadResult> {
    quad.validate()?;
    if !(p.beta > -1.0) || !p.beta.is_finite() {
        return Err(invalid("beta", format!("must lie in (-1, ∞), got {}", p.beta)));
    }
    if !p.a.is_finite() {
        return Err(invalid("a", "lower limit must be finite"));
    }
    if !(p.upper > p.a) {
        return Err(invalid("upper", format!("must exceed the lower limit {}", p.a)));
    }
    let infinite = p.upper.is_infinite();
    let kappa = match (infinite, quad.decay_rate) {
        (true, Some(k)) => k,
        (true, None) => return Err(invalid("decay_rate", "required for an infinite upper limit")),
        (false, k) => k.unwrap_or(1.0),
    };
    let tol = quad.tolerance();
    let s = p.freq;

    // endpoint segment in the variable u, v = a + u^pow
    let mut head_len = 1.0_f64.min(p.upper - p.a);
    if s != 0.0 {
        head_len = head_len.min(50.0 / s.abs());
    }
    let singular = p.beta != 0.0 && p.beta.fract() != 0.0;
    let mut total = Accum::default();
    if singular {
        let pow = substitution_power(p.beta);
        let pw = pow as f64;
        let u_max = head_len.powf(1.0 / pw);
        let head = |u: f64| -> Complex64 {
            let w = u.powi(pow as i32);
            let v = p.a + w;
            // (wG)^β · p u^{p-1} = G^β · p · u^{pβ + p - 1}
            let expo = pw * p.beta + pw - 1.0;
            let jac = pw * (expo * u.ln() + p.beta * (p.log_factor)(w)).exp();
            (p.amp)(v) * jac * Complex64::from_polar(1.0, s * v)
        };
        let breaks: Vec<f64> = (0..=8).map(|k| u_max * k as f64 / 8.0).collect();
        let h = OscIntegrand { amp: &head, freq: 0.0 };
        total.add(adapt(&h, &breaks, tol, Complex64::new(0.0, 0.0), quad.max_subdivisions)?);
    } else {
        head_len = 0.0;
    }

    let start = p.a + head_len;
    let amp = |v: f64| p.full_amp(v);
    let body = OscIntegrand { amp: &amp, freq: s };
    let step = (1.0 / kappa).clamp(0.05, 4.0);

    let mut end = if infinite {
        march(p, start, step, kappa, quad, total.value.norm().max(1e-3 * total.abs))?
    } else {
        p.upper
    };
    if end > start {
        let breaks = graded_breaks(start, end, head_len.max(1e-3 * step), step);
        let offset = total.value;
        total.add(adapt(&body, &breaks, tol, offset, quad.max_subdivisions)?);
    }

    let mut tail_bound = 0.0;
    if infinite {
        // re-check the truncation against the final total and extend if needed
        for _ in 0..64 {
            tail_bound = p.envelope(end - 0.25 * step, end) * (0.25 * step * kappa).exp() / kappa;
            let target = quad.abs_tol * 1e-2
                + total.value.norm() * 10f64.powf(-quad.tail_cutoff_decades);
            if tail_bound <= target.max(100.0 * f64::EPSILON * total.abs) {
                break;
            }
            let more = end + 8.0 * step;
            let breaks = graded_breaks(end, more, step, step);
            total.add(adapt(&body, &breaks, tol, total.value, quad.max_subdivisions)?);
            end = more;
        }
    }

    Ok(QuadResult {
        value: total.value,
        error_estimate: total.error + tail_bound,
        subdivisions_used: total.panels,
        truncation_point: end,
    })
}

/// Breakpoints from `lo` to `hi`: geometric from width `first` up to `step`,
/// then uniform.
fn graded_breaks(lo: f64, hi: f64, first: f64, step: f64) -> Vec<f64> {
    let mut out = vec![lo];
    let mut w = first.max(1e-12).min(step);
    let mut x = lo;
    while x < hi {
        x = (x + w).min(hi);
        out.push(x);
        w = (2.0 * w).min(step);
    }
    out
}

/// March using the integrand envelope until the remaining tail is negligible
/// relative to `scale`.
fn march(p: &Problem<'_>, start: f64, step: f64, kappa: f64, quad: &QuadSpec, scale: f64) -> Result<f64> {
    const MAX_STEPS: usize = 20_000;
    const GROWTH_LIMIT: usize = 8;
    let mut x = start;
    let mut prev = f64::INFINITY;
    let mut growth = 0;
    let mut scale = scale;
    for _ in 0..MAX_STEPS {
        let env = p.envelope(x, x + step);
        if !env.is_finite() {
            return Err(Error::Divergence { at: x });
        }
        if scale == 0.0 {
            scale = env * step;
        }
        let bound = env * (step * kappa).exp() / kappa;
        let target = quad.abs_tol * 1e-2 + scale * 10f64.powf(-quad.tail_cutoff_decades);
        x += step;
        if bound <= target {
            return Ok(x);
        }
        if env > prev && env > 0.0 {
            growth += 1;
            if growth >= GROWTH_LIMIT {
                return Err(Error::DecayViolation { at: x });
            }
        } else {
            growth = 0;
        }
        prev = env;
    }
    Err(Error::NonConvergence { error: f64::NAN, tolerance: quad.abs_tol, subdivisions: MAX_STEPS })
}

/// `∫_R^{upper} f_smooth(v) (ch v - ch R)^β e^{isv} dv` for `R > 0`, `β > -1`.
///
/// With `upper = ∞` the caller must provide `quad.decay_rate`.
pub fn integrate_singular_osc<F>(
    f_smooth: F,
    beta: f64,
    r: f64,
    s: f64,
    upper: f64,
    quad: &QuadSpec,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid("R", format!("must be positive, got {r}")));
    }
    // ch(R + w) - ch R = 2 sh(R + w/2) sh(w/2) = w · G(w)
    let log_factor = move |w: f64| {
        if w < 1e-8 {
            // sh(w/2)/w → 1/2, keep two terms
            (2.0 * (r + 0.5 * w).sinh() * 0.5 * (1.0 + w * w / 24.0)).ln()
        } else {
            std::f64::consts::LN_2 + ln_sinh(r + 0.5 * w) + ln_sinh(0.5 * w) - w.ln()
        }
    };
    let p = Problem { amp: &f_smooth, beta, log_factor: &log_factor, a: r, upper, freq: s };
    solve(&p, quad)
}

/// `∫_a^{upper} f(v) (v - a)^β e^{isv} dv`.
pub fn integrate_algebraic_endpoint<F>(
    f: F,
    beta: f64,
    a: f64,
    upper: f64,
    s: f64,
    quad: &QuadSpec,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let zero = |_w: f64| 0.0;
    let p = Problem { amp: &f, beta, log_factor: &zero, a, upper, freq: s };
    solve(&p, quad)
}

/// `∫_a^{upper} f(v) (w·G(w))^β e^{isv} dv` with `w = v - a` and a caller
/// supplied smooth positive `G`, given through `ln G`.
pub fn integrate_weighted_endpoint<F, G>(
    f: F,
    beta: f64,
    log_factor: G,
    a: f64,
    upper: f64,
    s: f64,
    quad: &QuadSpec,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> f64,
{
    let p = Problem { amp: &f, beta, log_factor: &log_factor, a, upper, freq: s };
    solve(&p, quad)
}

/// `∫_a^∞ f(v) dv` for `f` decaying at least like `e^{-κv}` with
/// `κ = quad.decay_rate`.
pub fn integrate_decaying<F>(f: F, a: f64, quad: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let zero = |_w: f64| 0.0;
    let p = Problem { amp: &f, beta: 0.0, log_factor: &zero, a, upper: f64::INFINITY, freq: 0.0 };
    solve(&p, quad)
}

/// `∫_a^b f(v) dv` for smooth `f` (adaptive Gauss–Kronrod).
pub fn integrate_finite<F>(f: F, a: f64, b: f64, quad: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    quad.validate()?;
    let h = OscIntegrand { amp: &f, freq: 0.0 };
    let acc = adapt(&h, &[a, b], quad.tolerance(), Complex64::new(0.0, 0.0), quad.max_subdivisions)?;
    Ok(QuadResult { value: acc.value, error_estimate: acc.error, subdivisions_used: acc.panels, truncation_point: b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn trivial_unit_interval() {
        let r = integrate_singular_osc(|_| c(1.0), 0.0, 1.0, 0.0, 2.0, &QuadSpec::default()).unwrap();
        assert_relative_eq!(r.value.re, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn inverse_sqrt_endpoint() {
        let r = integrate_algebraic_endpoint(|_| c(1.0), -0.5, 0.0, 1.0, 0.0, &QuadSpec::default()).unwrap();
        assert_relative_eq!(r.value.re, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn cube_root_endpoint_and_irrational_beta() {
        let q = QuadSpec::default();
        let r = integrate_algebraic_endpoint(|_| c(1.0), -1.0 / 3.0, 0.0, 1.0, 0.0, &q).unwrap();
        assert_relative_eq!(r.value.re, 1.5, max_relative = 1e-11);
        let beta = -1.0 / std::f64::consts::PI;
        let r = integrate_algebraic_endpoint(|_| c(1.0), beta, 0.0, 1.0, 0.0, &q).unwrap();
        assert_relative_eq!(r.value.re, 1.0 / (1.0 + beta), max_relative = 1e-9);
    }

    #[test]
    fn decaying_examples() {
        let q = QuadSpec::default().decay(1.0);
        let r = integrate_decaying(|v: f64| c((-v).exp()), 0.0, &q).unwrap();
        assert_relative_eq!(r.value.re, 1.0, max_relative = 1e-12);
        let r = integrate_decaying(|v: f64| c(v * (-v).exp()), 0.0, &QuadSpec::default().decay(0.9)).unwrap();
        assert_relative_eq!(r.value.re, 1.0, max_relative = 1e-12);
        let nu = -0.5;
        let r = integrate_decaying(|v: f64| c(((nu - 1.0) * v).exp()), 2.0, &QuadSpec::default().decay(1.5)).unwrap();
        assert_relative_eq!(r.value.re, ((nu - 1.0) * 2.0).exp() / (1.0 - nu), max_relative = 1e-12);
    }

    #[test]
    fn growth_is_reported() {
        let q = QuadSpec::default().decay(1.0);
        let r = integrate_decaying(|v: f64| c(v.exp()), 0.0, &q);
        assert!(matches!(r, Err(Error::DecayViolation { .. }) | Err(Error::Divergence { .. })));
    }

    #[test]
    fn infinite_upper_needs_decay_rate() {
        let r = integrate_decaying(|v: f64| c((-v).exp()), 0.0, &QuadSpec::default());
        assert!(matches!(r, Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn oscillatory_unit_interval() {
        let r0 = 0.7;
        for &s in &[10.0, 1e2, 1e3, 1e4] {
            let r = integrate_singular_osc(|_| c(1.0), 0.0, r0, s, r0 + 1.0, &QuadSpec::default()).unwrap();
            let i = Complex64::i();
            let exact = ((i * s * (r0 + 1.0)).exp() - (i * s * r0).exp()) / (i * s);
            assert!((r.value - exact).norm() <= 1e-10 * exact.norm(), "s = {s}");
        }
    }

    #[test]
    fn rejects_bad_beta() {
        let q = QuadSpec::default();
        assert!(integrate_singular_osc(|_| c(1.0), -1.0, 1.0, 0.0, 2.0, &q).is_err());
        assert!(integrate_singular_osc(|_| c(1.0), f64::NAN, 1.0, 0.0, 2.0, &q).is_err());
    }

    #[test]
    fn fundamental_theorem_closed_form() {
        // D[e^{isv}] = e^{isv}(is·csch v - coth v·csch v), ∫_R^∞ = -e^{isR}/sh R
        let q = QuadSpec::default().decay(1.0);
        for &(r, s) in &[(0.3, 0.0), (1.0, 2.5), (2.0, 40.0), (0.05, 300.0)] {
            let amp = move |v: f64| {
                let cs = 1.0 / v.sinh();
                Complex64::new(-cs / v.tanh(), s * cs)
            };
            let got = integrate_singular_osc(amp, 0.0, r, s, f64::INFINITY, &q).unwrap();
            let exact = -Complex64::from_polar(1.0, s * r) / r.sinh();
            assert!((got.value - exact).norm() <= 1e-9 * exact.norm(), "R={r} s={s}: {got:?}");
        }
    }
}

//! The one-dimensional integrals
//! `I₀ = ∫_0^1 (1 + |λR - t|)^{-N} R^α dR` and
//! `I∞ = ∫_1^∞ (1 + |λR - t|)^{-N} R^α dR` against their closed-form bounds.

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_positive, relative_drift, EstimateReport, STABILITY_DRIFT};
use crate::error::{invalid, Result};
use crate::quadrature::{integrate_algebraic_endpoint, integrate_decaying, integrate_finite, QuadSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementaryBounds {
    pub alpha: f64,
    pub lambda: f64,
    pub t: f64,
    pub decay_order: f64,
    pub i0: f64,
    pub i_inf: f64,
    /// Bound for `I₀` with constant 1.
    pub bound0: f64,
    /// Bound for `I∞` with constant 1.
    pub bound_inf: f64,
}

impl ElementaryBounds {
    pub fn ratio0(&self) -> f64 {
        self.i0 / self.bound0
    }

    pub fn ratio_inf(&self) -> f64 {
        self.i_inf / self.bound_inf
    }
}

fn bound0(alpha: f64, lambda: f64, t: f64, big_n: f64) -> f64 {
    if t <= 2.0 * lambda {
        (1.0 + lambda).powf(-alpha - 1.0) * (1.0 + t).powf(alpha)
    } else {
        (1.0 + t).powf(-big_n)
    }
}

fn bound_inf(alpha: f64, lambda: f64, t: f64, big_n: f64) -> f64 {
    if t <= 0.5 * lambda {
        lambda.powf(-alpha - 1.0) * (1.0 + lambda).powf(-big_n + alpha + 1.0)
    } else {
        lambda.powf(-alpha - 1.0) * (1.0 + t).powf(alpha)
    }
}

/// Both integrals by quadrature, split at the kink `R = t/λ`, together with
/// their bounds.
pub fn elementary_bounds(alpha: f64, lambda: f64, t: f64, big_n: f64, quad: &QuadSpec) -> Result<ElementaryBounds> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(invalid("alpha", format!("must be nonnegative, got {alpha}")));
    }
    check_positive("lambda", lambda)?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(invalid("t", format!("must be nonnegative, got {t}")));
    }
    if !(big_n > alpha + 1.0) {
        return Err(invalid("N", format!("need N > α + 1, got N = {big_n}, α = {alpha}")));
    }
    let kernel = |r: f64| (1.0 + (lambda * r - t).abs()).powf(-big_n);
    let kink = t / lambda;

    // I₀ with the weight R^α handled at the endpoint 0
    let k0 = kink.clamp(0.0, 1.0);
    let mut i0 = 0.0;
    if k0 > 0.0 {
        i0 += integrate_algebraic_endpoint(|r| Complex64::new(kernel(r), 0.0), alpha, 0.0, k0, 0.0, quad)?.value.re;
    }
    if k0 < 1.0 {
        let f = |r: f64| Complex64::new(kernel(r) * r.powf(alpha), 0.0);
        i0 += if k0 == 0.0 {
            integrate_algebraic_endpoint(|r| Complex64::new(kernel(r), 0.0), alpha, 0.0, 1.0, 0.0, quad)?.value.re
        } else {
            integrate_finite(f, k0, 1.0, quad)?.value.re
        };
    }

    // I∞ in w = ln R: ∫_0^∞ (1 + |λe^w - t|)^{-N} e^{(α+1)w} dw decays at rate N - α - 1
    let g = |w: f64| {
        let r = w.exp();
        Complex64::new(kernel(r) * ((alpha + 1.0) * w).exp(), 0.0)
    };
    let wk = if kink > 1.0 { kink.ln() } else { 0.0 };
    let tail = QuadSpec { decay_rate: Some(big_n - alpha - 1.0), ..quad.clone() };
    let mut i_inf = integrate_decaying(g, wk, &tail)?.value.re;
    if wk > 0.0 {
        i_inf += integrate_finite(g, 0.0, wk, quad)?.value.re;
    }

    Ok(ElementaryBounds {
        alpha,
        lambda,
        t,
        decay_order: big_n,
        i0,
        i_inf,
        bound0: bound0(alpha, lambda, t, big_n),
        bound_inf: bound_inf(alpha, lambda, t, big_n),
    })
}

fn sweep(alpha: f64, big_n: f64, lambdas: &[f64], ts: &[f64], quad: &QuadSpec) -> Result<Vec<ElementaryBounds>> {
    let jobs: Vec<(f64, f64)> = lambdas.iter().flat_map(|&l| ts.iter().map(move |&t| (l, t))).collect();
    jobs.par_iter().map(|&(l, t)| elementary_bounds(alpha, l, t, big_n, quad)).collect()
}

fn fitted(b: &[ElementaryBounds]) -> f64 {
    b.iter().map(|e| e.ratio0().max(e.ratio_inf())).fold(0.0, f64::max)
}

fn refine_geometric(v: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * v.len());
    for (i, &x) in v.iter().enumerate() {
        out.push(x);
        if let Some(&y) = v.get(i + 1) {
            out.push(if x > 0.0 { (x * y).sqrt() } else { 0.5 * y });
        }
    }
    out
}

/// One constant for both bounds over the `(λ, t)` grid at fixed `(α, N)`,
/// refit on a doubled grid; pass iff finite and stable.
pub fn check_elementary_bounds(alpha: f64, big_n: f64, lambdas: &[f64], ts: &[f64], quad: &QuadSpec) -> Result<EstimateReport> {
    let start = Instant::now();
    if lambdas.is_empty() || ts.is_empty() {
        return Err(invalid("grid", "λ and t grids must be nonempty"));
    }
    let coarse = sweep(alpha, big_n, lambdas, ts, quad)?;
    let fine = sweep(alpha, big_n, &refine_geometric(lambdas), &refine_geometric(ts), quad)?;
    let c = fitted(&coarse);
    let f = fitted(&fine);
    Ok(EstimateReport {
        check: format!("elementary/alpha={alpha}/N={big_n}"),
        grid: format!("lambda={lambdas:?} t={ts:?}"),
        fitted_constant: c,
        refined_constant: Some(f),
        growth_exponent_fit: None,
        pass: c.is_finite() && f.is_finite() && relative_drift(c, f) < STABILITY_DRIFT,
        runtime_seconds: start.elapsed().as_secs_f64(),
        columns: ["lambda", "t", "I0", "Iinf", "bound0", "bound_inf"].map(String::from).to_vec(),
        rows: coarse.iter().map(|e| vec![e.lambda, e.t, e.i0, e.i_inf, e.bound0, e.bound_inf]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QuadSpec {
        QuadSpec::with_tol(1e-11)
    }

    #[test]
    fn closed_forms() {
        // α = 0, t = 0: I₀ = (1 - (1+λ)^{1-N}) / (λ(N-1)),  I∞ = (1+λ)^{1-N} / (λ(N-1))
        let (l, n) = (4.0, 3.0);
        let e = elementary_bounds(0.0, l, 0.0, n, &q()).unwrap();
        let tail = (1.0f64 + l).powf(1.0 - n) / (l * (n - 1.0));
        assert!((e.i0 - (1.0 / (l * (n - 1.0)) - tail)).abs() < 1e-10);
        assert!((e.i_inf - tail).abs() < 1e-10);
    }

    #[test]
    fn kink_inside_both_ranges() {
        // symmetric about the kink: ∫_0^{2c} (1 + λ|R - c|)^{-N} dR = 2(1 - (1+λc)^{1-N})/(λ(N-1))
        let (l, t, n) = (2.0, 1.0, 4.0);
        let e = elementary_bounds(0.0, l, t, n, &q()).unwrap();
        assert!((e.i0 - 2.0 * (1.0 - 2f64.powf(1.0 - n)) / (l * (n - 1.0))).abs() < 1e-10);
        let e = elementary_bounds(1.0, 1.0, 10.0, 4.0, &q()).unwrap();
        assert!(e.ratio_inf().is_finite() && e.ratio_inf() > 0.0);
    }

    #[test]
    fn preconditions() {
        assert!(elementary_bounds(0.0, 0.0, 0.0, 2.0, &q()).is_err());
        assert!(elementary_bounds(1.0, 1.0, 0.0, 2.0, &q()).is_err());
        assert!(elementary_bounds(-1.0, 1.0, 0.0, 2.0, &q()).is_err());
    }
}

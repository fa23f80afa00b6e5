//! Pointwise envelopes for `G_λ(R, ρ)`: `R ≥ 1`, `R ≤ 1`, and the improved
//! small-`R` bound for the symmetrised kernel.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_dim, relative_drift, refined_quad, wave_profile, wave_table, EstimateReport, DECAY_WINDOW, STABILITY_DRIFT};
use crate::error::{invalid, Result};
use crate::quadrature::QuadSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum EnvelopeRegime {
    /// `R ≥ 1`.
    #[serde(rename = "large-R", alias = "large-r")]
    #[value(name = "large-R", alias = "large-r")]
    LargeR,
    /// `0 < R ≤ 1`, with the singular factors `R^{1-n}`, `R^{-n/2}`.
    #[serde(rename = "small-R", alias = "small-r")]
    #[value(name = "small-R", alias = "small-r")]
    SmallR,
    /// `0 < R ≤ 1`, bound `λ^{n+1}` for `½[G(R, ρ) + G(R, 2R - ρ)]`, `ρ ≤ R`.
    #[serde(rename = "small-R-improved", alias = "small-r-improved")]
    #[value(name = "small-R-improved", alias = "small-r-improved")]
    SmallRImproved,
}

impl EnvelopeRegime {
    pub fn contains(&self, r: f64) -> bool {
        match self {
            EnvelopeRegime::LargeR => r >= 1.0 && r.is_finite(),
            _ => r > 0.0 && r <= 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeSpec {
    pub n: usize,
    pub regime: EnvelopeRegime,
    /// The decay order `N` in `(1 + |λρ|)^{-N}`.
    pub decay_order: u32,
}

impl EnvelopeSpec {
    pub fn new(n: usize, regime: EnvelopeRegime, decay_order: u32) -> Result<Self> {
        check_dim(n)?;
        Ok(EnvelopeSpec { n, regime, decay_order })
    }

    /// The `ρ`-independent factor of the envelope.
    pub fn amplitude(&self, r: f64, lambda: f64) -> f64 {
        let nf = self.n as f64;
        let big = lambda >= 1.0;
        match self.regime {
            EnvelopeRegime::LargeR if big => lambda.powf(0.5 * nf + 1.0),
            EnvelopeRegime::LargeR => lambda * lambda,
            EnvelopeRegime::SmallR if self.n == 1 => r.powf(-0.5) * if big { lambda.powf(1.5) } else { lambda * lambda },
            EnvelopeRegime::SmallR if big => r.powf(1.0 - nf) * lambda * lambda + r.powf(-0.5 * nf) * lambda.powf(0.5 * nf + 1.0),
            EnvelopeRegime::SmallR => r.powf(1.0 - nf) * lambda * lambda,
            EnvelopeRegime::SmallRImproved if big => lambda.powf(nf + 1.0),
            EnvelopeRegime::SmallRImproved => lambda * lambda,
        }
    }

    /// The envelope, up to its unspecified constant.
    pub fn predicted(&self, r: f64, rho: f64, lambda: f64) -> f64 {
        self.amplitude(r, lambda) * (1.0 + (lambda * rho).abs()).powi(-(self.decay_order as i32))
    }
}

/// Sample grid: every `λ` against every `R`, with `λρ` on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeSweep {
    pub lambdas: Vec<f64>,
    pub radii: Vec<f64>,
    pub lambda_rho_max: f64,
    pub lambda_rho_step: f64,
}

impl EnvelopeSweep {
    pub fn default_for(regime: EnvelopeRegime) -> Self {
        let radii = match regime {
            EnvelopeRegime::LargeR => geometric(1.0, 8.0, 6),
            EnvelopeRegime::SmallR => geometric(0.01, 1.0, 6),
            EnvelopeRegime::SmallRImproved => geometric(0.002, 1.0, 6),
        };
        EnvelopeSweep { lambdas: vec![0.5, 2.0, 8.0, 32.0], radii, lambda_rho_max: DECAY_WINDOW, lambda_rho_step: 0.25 }
    }

    /// Twice as dense in `λρ`, with the geometric midpoint between
    /// neighbouring radii added.
    pub fn refined(&self) -> Self {
        let mut radii = Vec::with_capacity(2 * self.radii.len());
        for (i, &r) in self.radii.iter().enumerate() {
            radii.push(r);
            if let Some(&next) = self.radii.get(i + 1) {
                radii.push((r * next).sqrt());
            }
        }
        EnvelopeSweep { radii, lambda_rho_step: 0.5 * self.lambda_rho_step, ..self.clone() }
    }

    fn validate(&self, regime: EnvelopeRegime) -> Result<()> {
        if self.lambdas.is_empty() || self.radii.is_empty() {
            return Err(invalid("grid", "λ and R grids must be nonempty"));
        }
        if self.lambdas.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
            return Err(invalid("lambda", "all λ must be positive"));
        }
        if let Some(r) = self.radii.iter().find(|&&r| !regime.contains(r)) {
            return Err(invalid("R", format!("R = {r} lies outside the {regime:?} regime")));
        }
        if !(self.lambda_rho_step > 0.0) || !(self.lambda_rho_max > 0.0) {
            return Err(invalid("lambda_rho", "step and range must be positive"));
        }
        Ok(())
    }

    fn lambda_rho(&self) -> Vec<f64> {
        let k = (self.lambda_rho_max / self.lambda_rho_step).round() as i64;
        (-k..=k).map(|i| i as f64 * self.lambda_rho_step).collect()
    }
}

pub(crate) fn geometric(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![a];
    }
    (0..count).map(|i| a * (b / a).powf(i as f64 / (count - 1) as f64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeSample {
    pub lambda: f64,
    pub r: f64,
    pub rho: f64,
    pub measured: f64,
    pub error_estimate: f64,
}

/// Raw samples of one sweep; refit against any decay order with [`fit`].
///
/// [`fit`]: EnvelopeReport::fit
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    pub spec: EnvelopeSpec,
    pub samples: Vec<EnvelopeSample>,
}

impl EnvelopeReport {
    /// Run the sweep.
    pub fn sample(spec: &EnvelopeSpec, sweep: &EnvelopeSweep, quad: &QuadSpec) -> Result<Self> {
        sweep.validate(spec.regime)?;
        let n = spec.n;
        let lr = sweep.lambda_rho();
        let jobs: Vec<(f64, f64)> = sweep.lambdas.iter().flat_map(|&l| sweep.radii.iter().map(move |&r| (l, r))).collect();
        let chunks: Vec<Result<Vec<EnvelopeSample>>> = jobs
            .par_iter()
            .map(|&(lambda, r)| {
                let psi = wave_profile(lambda);
                let rhos: Vec<f64> = match spec.regime {
                    EnvelopeRegime::SmallRImproved => lr.iter().map(|x| x / lambda).filter(|&rho| rho <= r).collect(),
                    _ => lr.iter().map(|x| x / lambda).collect(),
                };
                let max_rho = rhos.iter().fold(0.0f64, |m, &rho| m.max(rho.abs()).max((2.0 * r - rho).abs()));
                let table = wave_table(n, r, &psi, lambda, max_rho, quad)?;
                Ok(rhos
                    .into_iter()
                    .map(|rho| {
                        let (measured, error_estimate) = match spec.regime {
                            EnvelopeRegime::SmallRImproved => {
                                let (a, ea) = table.g_with_error(rho);
                                let (b, eb) = table.g_with_error(2.0 * r - rho);
                                (0.5 * (a + b).abs(), 0.5 * (ea + eb))
                            }
                            _ => {
                                let (g, e) = table.g_with_error(rho);
                                (g.abs(), e)
                            }
                        };
                        EnvelopeSample { lambda, r, rho, measured, error_estimate }
                    })
                    .collect())
            })
            .collect();
        let mut samples = Vec::new();
        for c in chunks {
            samples.extend(c?);
        }
        Ok(EnvelopeReport { spec: *spec, samples })
    }

    /// Largest measured/predicted ratio under `spec`.
    pub fn fit(&self, spec: &EnvelopeSpec) -> f64 {
        self.samples.iter().map(|s| s.measured / spec.predicted(s.r, s.rho, s.lambda)).fold(0.0, f64::max)
    }

    /// Fitted constant for each `λ` separately.
    pub fn fit_per_lambda(&self, spec: &EnvelopeSpec) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for s in &self.samples {
            let ratio = s.measured / spec.predicted(s.r, s.rho, s.lambda);
            match out.iter_mut().find(|(l, _)| *l == s.lambda) {
                Some(entry) => entry.1 = entry.1.max(ratio),
                None => out.push((s.lambda, ratio)),
            }
        }
        out
    }

    pub fn max_lambda_rho(&self) -> f64 {
        self.samples.iter().map(|s| (s.lambda * s.rho).abs()).fold(0.0, f64::max)
    }
}

/// Fit the envelope constant on `sweep`, then on its refinement with a
/// tighter quadrature; pass iff both fits are finite and agree within
/// [`STABILITY_DRIFT`].
pub fn check_envelope(spec: &EnvelopeSpec, sweep: &EnvelopeSweep, quad: &QuadSpec) -> Result<EstimateReport> {
    let start = Instant::now();
    let coarse = EnvelopeReport::sample(spec, sweep, quad)?;
    let fine = EnvelopeReport::sample(spec, &sweep.refined(), &refined_quad(quad))?;
    let c = coarse.fit(spec);
    let f = fine.fit(spec);
    let pass = c.is_finite() && f.is_finite() && c > 0.0 && relative_drift(c, f) < STABILITY_DRIFT;
    let rows = coarse
        .samples
        .iter()
        .map(|s| vec![s.lambda, s.r, s.rho, s.measured, spec.predicted(s.r, s.rho, s.lambda), s.error_estimate])
        .collect();
    Ok(EstimateReport {
        check: format!("envelope/{:?}/n={}/N={}", spec.regime, spec.n, spec.decay_order),
        grid: format!(
            "lambda={:?} R={:?} |lambda*rho|<={} step {}",
            sweep.lambdas, sweep.radii, sweep.lambda_rho_max, sweep.lambda_rho_step
        ),
        fitted_constant: c,
        refined_constant: Some(f),
        growth_exponent_fit: None,
        pass,
        runtime_seconds: start.elapsed().as_secs_f64(),
        columns: ["lambda", "R", "rho", "measured", "envelope", "error_estimate"].map(String::from).to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_shapes() {
        let a = EnvelopeSpec::new(2, EnvelopeRegime::LargeR, 4).unwrap();
        assert_eq!(a.amplitude(3.0, 4.0), 16.0);
        assert_eq!(a.amplitude(3.0, 0.5), 0.25);
        assert_eq!(a.predicted(3.0, 0.25, 4.0), 16.0 / 16.0);
        let b = EnvelopeSpec::new(1, EnvelopeRegime::SmallR, 4).unwrap();
        assert!((b.amplitude(0.25, 4.0) - 2.0 * 8.0).abs() < 1e-12);
        let b2 = EnvelopeSpec::new(2, EnvelopeRegime::SmallR, 4).unwrap();
        assert!((b2.amplitude(0.5, 2.0) - (2.0 * 4.0 + 2.0 * 4.0)).abs() < 1e-12);
        let c = EnvelopeSpec::new(2, EnvelopeRegime::SmallRImproved, 4).unwrap();
        assert_eq!(c.amplitude(0.1, 2.0), 8.0);
        assert!(EnvelopeSpec::new(0, EnvelopeRegime::LargeR, 4).is_err());
    }

    #[test]
    fn sweep_validation_and_refinement() {
        let s = EnvelopeSweep::default_for(EnvelopeRegime::LargeR);
        assert!(s.validate(EnvelopeRegime::LargeR).is_ok());
        assert!(s.validate(EnvelopeRegime::SmallR).is_err());
        let r = s.refined();
        assert_eq!(r.radii.len(), 2 * s.radii.len() - 1);
        assert_eq!(r.lambda_rho().len(), 2 * s.lambda_rho().len() - 1);
    }

    #[test]
    fn small_sweep_is_stable() {
        let spec = EnvelopeSpec::new(2, EnvelopeRegime::LargeR, 4).unwrap();
        let sweep = EnvelopeSweep { lambdas: vec![2.0], radii: vec![1.0, 2.0], lambda_rho_max: 8.0, lambda_rho_step: 0.5 };
        let rep = check_envelope(&spec, &sweep, &QuadSpec::with_tol(1e-8)).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.fitted_constant > 0.0);
    }
}

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimates::{EnvelopeRegime, EnvelopeSweep, DEFAULT_DECAY_ORDER};
use crate::quadrature::QuadSpec;
use crate::spectral::MultiplierProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Kernel,
    Envelope,
    L1growth,
    Supnorm,
    Hs,
    Oracle,
    ResolventSuite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Named multiplier profiles; `auto` picks the band bump for `λ ≥ 1` and the
/// low-pass bump below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileChoice {
    #[default]
    Auto,
    BumpLow,
    BumpBand,
    BumpWide,
}

impl ProfileChoice {
    pub fn profile(&self, lambda: f64) -> MultiplierProfile {
        match self {
            ProfileChoice::Auto => crate::estimates::wave_profile(lambda),
            ProfileChoice::BumpLow => MultiplierProfile::bump_low(),
            ProfileChoice::BumpBand => MultiplierProfile::bump_band(),
            ProfileChoice::BumpWide => MultiplierProfile::bump_wide(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub task: Task,
    pub n: usize,
    /// Iteration order of `D_sh`; the smallest admissible one when absent.
    #[serde(default)]
    pub l: Option<usize>,
    pub lambda: Vec<f64>,
    pub t: Vec<f64>,
    /// Radii for `kernel` and `oracle`; for `envelope`, the `R` grid.
    pub r: Vec<f64>,
    /// The `x` coordinate of kernel sample points (needs `|x| ≤ R`).
    #[serde(default)]
    pub x: f64,
    #[serde(default)]
    pub epsilon: f64,
    #[serde(default)]
    pub psi: ProfileChoice,
    pub regime: EnvelopeRegime,
    pub decay_order: u32,
    /// Sobolev order for `hs`; by default the smallest admissible plus 0.1.
    #[serde(default)]
    pub sobolev_order: Option<f64>,
    /// Pass threshold for `oracle`.
    pub tolerance: f64,
    pub quad: QuadSpec,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    /// Worker threads; 0 means one per core. `AXB_THREADS` overrides it.
    #[serde(default)]
    pub threads: usize,
}

impl SweepConfig {
    /// Defaults for each task, matching the documented examples.
    pub fn default_for(task: Task) -> Self {
        let mut c = SweepConfig {
            task,
            n: 2,
            l: None,
            lambda: vec![8.0],
            t: vec![1.0],
            r: Vec::new(),
            x: 0.0,
            epsilon: 0.0,
            psi: ProfileChoice::Auto,
            regime: EnvelopeRegime::LargeR,
            decay_order: DEFAULT_DECAY_ORDER,
            sobolev_order: None,
            tolerance: 1e-4,
            quad: QuadSpec::with_tol(1e-9),
            format: Format::Csv,
            output: None,
            seed: 0,
            threads: 0,
        };
        match task {
            Task::Kernel => c.r = linspace(0.1, 6.0, 50),
            Task::Envelope => {
                let s = EnvelopeSweep::default_for(c.regime);
                c.lambda = s.lambdas;
                c.r = s.radii;
            }
            Task::L1growth => c.t = vec![1.0, 2.0, 4.0],
            Task::Supnorm => {
                c.lambda = vec![4.0, 16.0, 64.0];
                c.t = vec![0.05, 0.5, 5.0];
            }
            Task::Hs => {
                c.lambda = vec![0.5, 4.0];
                c.epsilon = 0.5;
            }
            Task::Oracle => {
                c.lambda = vec![4.0];
                c.r = linspace(0.1, 6.0, 10);
            }
            Task::ResolventSuite => {}
        }
        if task != Task::Kernel {
            c.format = Format::Json;
        }
        c
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        self.quad.validate().map_err(|e| Error::Config(e.to_string()))?;
        let needs_lambda = !matches!(self.task, Task::ResolventSuite);
        let needs_t = matches!(self.task, Task::Kernel | Task::L1growth | Task::Supnorm | Task::Oracle);
        let needs_r = matches!(self.task, Task::Kernel | Task::Envelope | Task::Oracle);
        if needs_lambda && self.lambda.is_empty() {
            return bad("λ grid is empty".into());
        }
        if needs_t && self.t.is_empty() {
            return bad("t grid is empty".into());
        }
        if needs_r && self.r.is_empty() {
            return bad("R grid is empty".into());
        }
        if self.lambda.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
            return bad("λ values must be positive".into());
        }
        if self.t.iter().chain(&self.r).any(|v| !v.is_finite()) {
            return bad("grids must be finite".into());
        }
        if !(self.epsilon >= 0.0) {
            return bad("ε must be nonnegative".into());
        }
        if !(self.tolerance > 0.0) {
            return bad("tolerance must be positive".into());
        }
        if matches!(self.task, Task::Kernel | Task::Oracle) {
            if self.lambda.len() != 1 || self.t.len() != 1 {
                return bad("kernel and oracle take a single λ and a single t".into());
            }
            if let Some(r) = self.r.iter().find(|&&r| !(r >= self.x.abs()) || r <= 0.0) {
                return bad(format!("R = {r} is not reachable from x = {}", self.x));
            }
        }
        Ok(())
    }

    /// Thread count after applying `AXB_THREADS`.
    pub fn effective_threads(&self) -> Result<usize> {
        match std::env::var("AXB_THREADS") {
            Ok(v) => v.trim().parse().map_err(|_| Error::Config(format!("AXB_THREADS = {v:?} is not a count"))),
            Err(_) => Ok(self.threads),
        }
    }
}

pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..count).map(|k| a + (b - a) * k as f64 / (count - 1) as f64).collect(),
    }
}

/// `a:b:count` for an evenly spaced grid, or a comma separated list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let err = || Error::Config(format!("cannot parse grid {s:?}"));
    let num = |p: &str| p.trim().parse::<f64>().map_err(|_| err());
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(err());
        }
        let count: usize = parts[2].trim().parse().map_err(|_| err())?;
        if count == 0 {
            return Err(err());
        }
        Ok(linspace(num(parts[0])?, num(parts[1])?, count))
    } else {
        s.split(',').map(num).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("1, 2,4").unwrap(), vec![1.0, 2.0, 4.0]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn defaults_validate_and_round_trip() {
        for task in [Task::Kernel, Task::Envelope, Task::L1growth, Task::Supnorm, Task::Hs, Task::Oracle, Task::ResolventSuite] {
            let c = SweepConfig::default_for(task);
            c.validate().unwrap();
            let s = serde_json::to_string(&c).unwrap();
            let back: SweepConfig = serde_json::from_str(&s).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn unknown_task_and_bad_values_rejected() {
        let mut v = serde_json::to_value(SweepConfig::default_for(Task::Kernel)).unwrap();
        v["task"] = "fourier".into();
        assert!(serde_json::from_value::<SweepConfig>(v).is_err());
        let mut c = SweepConfig::default_for(Task::Kernel);
        c.lambda.clear();
        assert!(c.validate().is_err());
        let mut c = SweepConfig::default_for(Task::Kernel);
        c.x = 1.0;
        assert!(c.validate().is_err());
        let mut c = SweepConfig::default_for(Task::Oracle);
        c.quad.rel_tol = 0.0;
        assert!(c.validate().is_err());
    }
}

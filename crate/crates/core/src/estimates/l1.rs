//! Weighted `L¹` norms of the rescaled wave kernels `W_λ^t = k_λ^{t/λ}`
//! and the growth of those norms in `t`.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_dim, check_positive, log_log_fit, panel_grid, wave_table, EstimateReport, DECAY_WINDOW, EXPONENT_BAND};
use crate::error::{invalid, Result};
use crate::group::radial_density;
use crate::quadrature::QuadSpec;
use crate::spectral::{check_wave_profile, MultiplierProfile};

/// Panel width in `R`, in units of `1/λ`.
const L1_PANEL: f64 = 1.0;
const L1_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct L1Sample {
    pub t: f64,
    /// `∫_G |W_λ^t| (1 + λR)^ε`.
    pub integral: f64,
}

/// `∫_G |W_λ^t(x, y)| (1 + λR)^ε d(x, y)` for every `t` in `t_grid`.
///
/// All `t` share one table of `F_R` per radius; the radial integral runs over
/// the window where `λ|R - t/λ| ≤ DECAY_WINDOW` for some `t`.
pub fn l1_norms(
    n: usize,
    psi: &MultiplierProfile,
    lambda: f64,
    epsilon: f64,
    t_grid: &[f64],
    quad: &QuadSpec,
) -> Result<Vec<L1Sample>> {
    check_dim(n)?;
    check_wave_profile(psi, lambda)?;
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(invalid("epsilon", format!("must be nonnegative, got {epsilon}")));
    }
    if t_grid.is_empty() || t_grid.iter().any(|&t| !(t >= 0.0) || !t.is_finite()) {
        return Err(invalid("t", "grid must be nonempty with t ≥ 0"));
    }
    let t_min = t_grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let t_max = t_grid.iter().cloned().fold(0.0, f64::max);
    let lo = ((t_min - DECAY_WINDOW) / lambda).max(0.0);
    let hi = (t_max + DECAY_WINDOW) / lambda;
    let nodes = panel_grid(lo, hi, L1_PANEL / lambda, L1_ORDER);
    let half_n = 0.5 * n as f64;
    let rows: Vec<Result<Vec<f64>>> = nodes
        .par_iter()
        .map(|&(r, w)| {
            let table = wave_table(n, r, psi, lambda, r + t_max / lambda, quad)?;
            let jw = radial_density(n, r)?.value * (-half_n * r).exp() * (1.0 + lambda * r).powf(epsilon) * w;
            Ok(t_grid
                .iter()
                .map(|&t| {
                    let tt = t / lambda;
                    jw * (table.g(r - tt) + table.g(r + tt)).abs()
                })
                .collect())
        })
        .collect();
    let mut sums = vec![0.0; t_grid.len()];
    for row in rows {
        for (s, v) in sums.iter_mut().zip(row?) {
            *s += v;
        }
    }
    Ok(t_grid.iter().zip(sums).map(|(&t, integral)| L1Sample { t, integral }).collect())
}

/// The exponent `p` in `∫ |W_λ^t| (1 + λR)^ε ≲ (1 + t)^p` for the given grid.
pub fn predicted_l1_exponent(n: usize, lambda: f64, epsilon: f64, t_grid: &[f64]) -> f64 {
    let nf = n as f64;
    if lambda < 1.0 {
        return 1.0 + epsilon;
    }
    let t_max = t_grid.iter().cloned().fold(0.0, f64::max);
    let t_min = t_grid.iter().cloned().fold(f64::INFINITY, f64::min);
    if t_max <= lambda {
        0.5 * nf + epsilon
    } else if t_min >= lambda {
        1.0 + epsilon
    } else {
        (0.5 * nf).max(1.0) + epsilon
    }
}

/// Regress `ln ∫|W_λ^t|(1 + λR)^ε` on `ln(1 + t)`; pass iff the fitted
/// exponent is at most the predicted one plus [`EXPONENT_BAND`].
pub fn check_l1_growth(
    n: usize,
    psi: &MultiplierProfile,
    lambda: f64,
    epsilon: f64,
    t_grid: &[f64],
    quad: &QuadSpec,
) -> Result<EstimateReport> {
    let start = Instant::now();
    check_positive("lambda", lambda)?;
    let samples = l1_norms(n, psi, lambda, epsilon, t_grid, quad)?;
    let xs: Vec<f64> = samples.iter().map(|s| 1.0 + s.t).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.integral).collect();
    let predicted = predicted_l1_exponent(n, lambda, epsilon, t_grid);
    let fit = log_log_fit(&xs, &ys, predicted)?;
    let constant = samples.iter().map(|s| s.integral / (1.0 + s.t).powf(predicted)).fold(0.0, f64::max);
    Ok(EstimateReport {
        check: format!("l1-growth/n={n}/lambda={lambda}/eps={epsilon}"),
        grid: format!("t={t_grid:?}"),
        fitted_constant: constant,
        refined_constant: None,
        growth_exponent_fit: Some(fit),
        pass: fit.exponent <= predicted + EXPONENT_BAND,
        runtime_seconds: start.elapsed().as_secs_f64(),
        columns: ["t", "integral"].map(String::from).to_vec(),
        rows: samples.iter().map(|s| vec![s.t, s.integral]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::r3_smoothed_wave;
    use std::f64::consts::PI;

    #[test]
    fn predicted_exponents() {
        assert_eq!(predicted_l1_exponent(2, 8.0, 0.0, &[1.0, 4.0]), 1.0);
        assert_eq!(predicted_l1_exponent(3, 8.0, 0.5, &[1.0, 4.0]), 2.0);
        assert_eq!(predicted_l1_exponent(3, 2.0, 0.0, &[8.0, 16.0]), 1.0);
        assert_eq!(predicted_l1_exponent(1, 0.5, 0.25, &[8.0]), 1.25);
    }

    /// For `n = 2` the kernel is the transfer of a Euclidean kernel on ℝ³,
    /// and the transfer preserves `L¹` norms.
    #[test]
    fn l1_matches_euclidean_norm() {
        let psi = MultiplierProfile::bump_band();
        let (lambda, t) = (2.0, 2.0);
        let got = l1_norms(2, &psi, lambda, 0.0, &[t], &QuadSpec::with_tol(1e-9)).unwrap()[0].integral;
        let q = QuadSpec::default();
        let hi = (t + DECAY_WINDOW) / lambda;
        let want: f64 = panel_grid(0.0, hi, 0.1 / lambda, 10)
            .iter()
            .map(|&(r, w)| w * 4.0 * PI * r * r * r3_smoothed_wave(lambda, t / lambda, &psi, r, &q).unwrap().abs())
            .sum();
        assert!((got - want).abs() < 1e-3 * want, "{got} vs {want}");
    }

    #[test]
    fn rejects_bad_inputs() {
        let psi = MultiplierProfile::bump_band();
        let q = QuadSpec::default();
        assert!(l1_norms(2, &psi, 2.0, -1.0, &[1.0], &q).is_err());
        assert!(l1_norms(2, &psi, 2.0, 0.0, &[], &q).is_err());
        assert!(l1_norms(2, &MultiplierProfile::bump_low(), 2.0, 0.0, &[1.0], &q).is_err());
    }
}

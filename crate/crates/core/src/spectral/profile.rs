//! Multiplier profiles `m(s)`, read as the operator `m(√L)`.
//!
//! Built-in bumps are assembled from the order-7 polynomial smoothstep, so
//! they are piecewise polynomial, `C⁷`, and supported exactly where claimed.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::special::{smoothstep, SMOOTHSTEP_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileKind {
    /// `1` on `[-1, 1]`, supported in `[-2, 2]`.
    BumpLow,
    /// Supported in `1 ≤ |s| ≤ 2`, equal to 1 at `|s| = 3/2`.
    BumpBand,
    /// Supported in `1/2 ≤ |s| ≤ 4`, equal to 1 on `1 ≤ |s| ≤ 2`.
    BumpWide,
    /// `e^{-τ s²}`: the heat semigroup at time `τ`.
    GaussHeat { tau: f64 },
    Custom,
}

/// `e^{-τ s²}` is cut off where `τ s² = GAUSS_CUTOFF`.
pub const GAUSS_CUTOFF: f64 = 45.0;

type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct MultiplierProfile {
    pub kind: ProfileKind,
    /// `Some(N)` for `C^N` profiles, `None` for smooth ones.
    pub smoothness: Option<usize>,
    pub even: bool,
    /// Breakpoints on `[0, ∞)` between which the profile is smooth; the last
    /// one bounds the support.
    pub pieces: Vec<f64>,
    func: ProfileFn,
}

impl fmt::Debug for MultiplierProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierProfile")
            .field("kind", &self.kind)
            .field("smoothness", &self.smoothness)
            .field("even", &self.even)
            .field("pieces", &self.pieces)
            .finish()
    }
}

impl MultiplierProfile {
    pub fn eval(&self, s: f64) -> f64 {
        (self.func)(s)
    }

    pub fn support_radius(&self) -> f64 {
        *self.pieces.last().expect("profile has pieces")
    }

    pub fn bump_low() -> Self {
        Self::builtin(ProfileKind::BumpLow, vec![0.0, 1.0, 2.0], |s| 1.0 - smoothstep(s.abs() - 1.0))
    }

    pub fn bump_band() -> Self {
        Self::builtin(ProfileKind::BumpBand, vec![1.0, 1.5, 2.0], |s| {
            let a = s.abs();
            smoothstep((a - 1.0) / 0.5) * (1.0 - smoothstep((a - 1.5) / 0.5))
        })
    }

    pub fn bump_wide() -> Self {
        Self::builtin(ProfileKind::BumpWide, vec![0.5, 1.0, 2.0, 4.0], |s| {
            let a = s.abs();
            smoothstep((a - 0.5) / 0.5) * (1.0 - smoothstep((a - 2.0) / 2.0))
        })
    }

    pub fn gauss_heat(tau: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(invalid("tau", format!("must be positive, got {tau}")));
        }
        let cut = (GAUSS_CUTOFF / tau).sqrt();
        Ok(MultiplierProfile {
            kind: ProfileKind::GaussHeat { tau },
            smoothness: None,
            even: true,
            pieces: vec![0.0, cut],
            func: Arc::new(move |s: f64| if s.abs() > cut { 0.0 } else { (-tau * s * s).exp() }),
        })
    }

    /// A user profile, smooth between the given breakpoints on `[0, ∞)` and
    /// zero beyond the last one.
    pub fn custom<F>(f: F, pieces: Vec<f64>, smoothness: Option<usize>, even: bool) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if pieces.len() < 2 || pieces.windows(2).any(|w| !(w[1] > w[0])) || pieces[0] < 0.0 {
            return Err(invalid("pieces", "need increasing breakpoints in [0, ∞)"));
        }
        Ok(MultiplierProfile { kind: ProfileKind::Custom, smoothness, even, pieces, func: Arc::new(f) })
    }

    fn builtin(kind: ProfileKind, pieces: Vec<f64>, f: fn(f64) -> f64) -> Self {
        MultiplierProfile { kind, smoothness: Some(SMOOTHSTEP_ORDER), even: true, pieces, func: Arc::new(f) }
    }

    /// Sample the profile and confirm it vanishes outside its claimed support
    /// (and inside the inner gap for band profiles).
    pub fn check_support(&self, samples: usize) -> bool {
        let lo = self.pieces[0];
        let hi = self.support_radius();
        (0..=samples).all(|k| {
            let s = 8.0 * hi * k as f64 / samples as f64;
            let inside = s >= lo && s <= hi;
            let v = self.eval(s);
            let sym = !self.even || self.eval(-s) == v;
            sym && (inside || v == 0.0)
        })
    }

    /// `m(s/λ)`.
    pub fn dilated(&self, lambda: f64) -> DilatedProfile<'_> {
        DilatedProfile { profile: self, lambda }
    }
}

/// A profile read at `s/λ`; its breakpoints scale by `λ`.
#[derive(Debug, Clone, Copy)]
pub struct DilatedProfile<'a> {
    pub profile: &'a MultiplierProfile,
    pub lambda: f64,
}

impl DilatedProfile<'_> {
    pub fn eval(&self, s: f64) -> f64 {
        self.profile.eval(s / self.lambda)
    }

    pub fn pieces(&self) -> Vec<f64> {
        self.profile.pieces.iter().map(|p| p * self.lambda).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shapes() {
        let low = MultiplierProfile::bump_low();
        assert_eq!(low.eval(0.3), 1.0);
        assert_eq!(low.eval(2.5), 0.0);
        let band = MultiplierProfile::bump_band();
        assert_eq!(band.eval(0.9), 0.0);
        assert!((band.eval(1.5) - 1.0).abs() < 1e-15);
        assert_eq!(band.eval(-2.1), 0.0);
        let wide = MultiplierProfile::bump_wide();
        assert_eq!(wide.eval(1.5), 1.0);
        assert_eq!(wide.eval(0.4), 0.0);
        assert!(wide.eval(3.0) > 0.0 && wide.eval(4.0) == 0.0);
        for p in [&low, &band, &wide] {
            assert!(p.even && p.smoothness == Some(7));
            assert!(p.check_support(4000));
        }
    }

    #[test]
    fn gauss_profile() {
        let g = MultiplierProfile::gauss_heat(0.5).unwrap();
        assert!((g.eval(1.0) - (-0.5f64).exp()).abs() < 1e-16);
        assert!(g.check_support(1000));
        assert!(MultiplierProfile::gauss_heat(0.0).is_err());
    }

    #[test]
    fn custom_validation() {
        assert!(MultiplierProfile::custom(|_| 1.0, vec![0.0], None, true).is_err());
        assert!(MultiplierProfile::custom(|_| 1.0, vec![1.0, 0.5], None, true).is_err());
        let c = MultiplierProfile::custom(|s: f64| (1.0 - s * s).max(0.0), vec![0.0, 1.0], Some(0), true).unwrap();
        assert_eq!(c.kind, ProfileKind::Custom);
        assert!(c.check_support(100));
    }
}

//! Small special-function toolkit: Gamma, unit-ball volumes, spherical Bessel
//! sequences for Filon moments, Gauss–Legendre rules and smoothstep bumps.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Γ(x) for real x, with poles mapped to infinity.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// 1/Γ(x), returning exactly zero at the poles 0, −1, −2, …
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// Euclidean volume of the unit ball in ℝⁿ, π^{n/2}/Γ(n/2+1).
pub fn unit_ball_volume(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    PI.powf(h) / gamma(h + 1.0)
}

fn upward_threshold(kmax: usize) -> f64 {
    1.5 * kmax as f64 + 10.0
}

/// Spherical Bessel functions j_0(x) … j_kmax(x) for x ≥ 0.
///
/// Upward recurrence is used when it is stable (x well above kmax); otherwise Miller's
/// downward recurrence normalised with Σ (2k+1) j_k² = 1.
pub fn spherical_bessel_seq(kmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; kmax + 1];
    let ax = x.abs();
    if ax < 1e-300 {
        out[0] = 1.0;
        return out;
    }
    if ax > upward_threshold(kmax) {
        let (s, c) = ax.sin_cos();
        out[0] = s / ax;
        if kmax >= 1 {
            out[1] = s / (ax * ax) - c / ax;
        }
        for k in 1..kmax {
            out[k + 1] = (2 * k + 1) as f64 / ax * out[k] - out[k - 1];
        }
    } else {
        let start = kmax + 24 + ax as usize;
        let mut scratch = vec![0.0; start + 2];
        scratch[start] = 1.0;
        for k in (1..=start).rev() {
            scratch[k - 1] = (2 * k + 1) as f64 / ax * scratch[k] - scratch[k + 1];
            if scratch[k - 1].abs() > 1e100 {
                for v in scratch[k - 1..].iter_mut() {
                    *v *= 1e-100;
                }
            }
        }
        let norm: f64 = scratch
            .iter()
            .enumerate()
            .map(|(k, v)| (2 * k + 1) as f64 * v * v)
            .sum();
        let scale = 1.0 / norm.sqrt();
        // fix the sign against j_0 = sin x / x when it is well conditioned
        let j0 = if ax < 1e-4 { 1.0 - ax * ax / 6.0 } else { ax.sin() / ax };
        let sign = if j0.abs() > 1e-3 && (j0 > 0.0) != (scratch[0] > 0.0) {
            -1.0
        } else if j0.abs() <= 1e-3 {
            // fall back to j_1, which cannot vanish together with j_0
            let j1 = if ax < 1e-4 { ax / 3.0 } else { ax.sin() / (ax * ax) - ax.cos() / ax };
            if (j1 > 0.0) != (scratch[1] > 0.0) { -1.0 } else { 1.0 }
        } else {
            1.0
        };
        for k in 0..=kmax {
            out[k] = sign * scale * scratch[k];
        }
    }
    if x < 0.0 {
        for (k, v) in out.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

/// Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Shared 16-point rule (Filon panels).
    pub fn order16() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(16))
    }

    /// Shared 20-point rule (spectral integrals).
    pub fn order20() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(20))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes.iter().zip(&self.weights).map(move |(x, w)| (c + h * x, h * w))
    }
}

/// P_n(x) and P_n'(x).
pub fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = if (1.0 - x * x).abs() < 1e-300 {
        0.5 * (n * (n + 1)) as f64
    } else {
        n as f64 * (x * p1 - p0) / (x * x - 1.0)
    };
    (p1, d)
}

/// Legendre polynomials P_0(x) … P_kmax(x).
pub fn legendre_seq(kmax: usize, x: f64, out: &mut [f64]) {
    out[0] = 1.0;
    if kmax >= 1 {
        out[1] = x;
    }
    for k in 1..kmax {
        out[k + 1] = ((2 * k + 1) as f64 * x * out[k] - k as f64 * out[k - 1]) / (k + 1) as f64;
    }
}

/// Order of the smoothstep used by the built-in bump profiles.
pub const SMOOTHSTEP_ORDER: usize = 7;

/// Polynomial smoothstep of order 7: 0 for x ≤ 0, 1 for x ≥ 1, C⁷ everywhere.
pub fn smoothstep(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if x > 0.5 {
        return 1.0 - smoothstep(1.0 - x);
    }
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    let c = COEFFS.get_or_init(|| {
        let n = SMOOTHSTEP_ORDER as u64;
        (0..=n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial(n + k, k) * binomial(2 * n + 1, n - k)
            })
            .collect()
    });
    let mut poly = 0.0;
    for &ck in c.iter().rev() {
        poly = poly * x + ck;
    }
    poly * x.powi(SMOOTHSTEP_ORDER as i32 + 1)
}

fn binomial(n: u64, k: u64) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r *= (n - i) as f64 / (i + 1) as f64;
    }
    r
}

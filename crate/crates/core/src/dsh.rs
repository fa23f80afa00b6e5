//! Iterates of `D_sh g = d/dv (g / sh v)` applied to exponentials.
//!
//! Writing `D^l[e^{μv}] = e^{μv} Σ_{k=0}^{l} μ^k a_{l,k}(v)`, the coefficient
//! functions satisfy `a_{l+1,k} = csch·a_{l,k-1} + (csch·a_{l,k})'`. Each
//! `a_{l,k}` is stored exactly as `P(csch) + coth·Q(csch)` with integer
//! coefficients, using
//!
//! ```text
//! d/dv csch^j        = -j coth csch^j
//! d/dv coth csch^j   = -(j+1) csch^{j+2} - j csch^j
//! ```
//!
//! Every monomial carries `csch^j` with `j ≥ l`, which gives the large-`v`
//! form `a_{l,k} = e^{-lv} × (bounded)`. Near `v = 0` the coefficients are
//! `a_{l,k} = v^{k-2l} Q_{l,k}(v²)`, with `Q_{l,k}` computed from exact
//! rational Laurent series of `csch` and `coth`.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Below this `v` the small-`v` series is used instead of `csch`/`coth`.
pub const SMALL_V: f64 = 1e-3;

/// Number of `v²` coefficients kept in each small-`v` series.
const SERIES_TERMS: usize = 24;

/// `P(csch) + coth · Q(csch)`; `p[j]`, `q[j]` multiply `csch^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CschPoly {
    pub p: Vec<i128>,
    pub q: Vec<i128>,
}

impl CschPoly {
    fn one() -> Self {
        CschPoly { p: vec![1], q: vec![] }
    }

    fn add_p(&mut self, j: usize, c: i128) {
        if self.p.len() <= j {
            self.p.resize(j + 1, 0);
        }
        self.p[j] += c;
    }

    fn add_q(&mut self, j: usize, c: i128) {
        if self.q.len() <= j {
            self.q.resize(j + 1, 0);
        }
        self.q[j] += c;
    }

    fn times_csch(&self) -> Self {
        let shift = |v: &Vec<i128>| {
            if v.is_empty() {
                vec![]
            } else {
                std::iter::once(0).chain(v.iter().copied()).collect()
            }
        };
        CschPoly { p: shift(&self.p), q: shift(&self.q) }
    }

    fn derivative(&self) -> Self {
        let mut out = CschPoly::default();
        for (j, &c) in self.p.iter().enumerate() {
            if c != 0 && j > 0 {
                out.add_q(j, -(j as i128) * c);
            }
        }
        for (j, &c) in self.q.iter().enumerate() {
            if c != 0 {
                out.add_p(j + 2, -(j as i128 + 1) * c);
                if j > 0 {
                    out.add_p(j, -(j as i128) * c);
                }
            }
        }
        out
    }

    fn add(&mut self, other: &CschPoly) {
        for (j, &c) in other.p.iter().enumerate() {
            self.add_p(j, c);
        }
        for (j, &c) in other.q.iter().enumerate() {
            self.add_q(j, c);
        }
    }

    /// Evaluate at given `csch` and `coth` values.
    pub fn eval(&self, csch: f64, coth: f64) -> f64 {
        horner(&self.p, csch) + coth * horner(&self.q, csch)
    }

    /// Evaluate `e^{lv}·(this)` through `t = e^{-v}` without overflow.
    fn eval_scaled(&self, l: usize, t: f64) -> f64 {
        // csch^j e^{lv} = 2^j t^{j-l} / (1-t²)^j with j ≥ l
        let d = 1.0 - t * t;
        let x = 2.0 * t / d;
        let coth = (1.0 + t * t) / d;
        let base = (2.0 / d).powi(l as i32);
        let shifted = |c: &[i128]| -> f64 {
            if c.len() <= l {
                debug_assert!(c.iter().all(|&v| v == 0));
                return 0.0;
            }
            horner(&c[l..], x)
        };
        base * (shifted(&self.p) + coth * shifted(&self.q))
    }

    fn min_power(&self) -> Option<usize> {
        let a = self.p.iter().position(|&c| c != 0);
        let b = self.q.iter().position(|&c| c != 0);
        match (a, b) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

fn horner(c: &[i128], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a as f64)
}

/// Coefficient tables `a_{l,k}` for one `l`, plus their small-`v` series.
#[derive(Debug)]
pub struct DshTable {
    pub l: usize,
    /// `a[k]` for `k = 0..=l`.
    pub a: Vec<CschPoly>,
    /// `small[k][m]`: `a_{l,k}(v) = v^{k-2l} Σ_m small[k][m] v^{2m}`.
    pub small: Vec<Vec<f64>>,
    sin_series: Vec<SinTerm>,
}

#[derive(Debug, Clone, Copy)]
struct SinTerm {
    coeff: f64,
    y_pow: i32,
    // exactly one of the two is nonzero depending on the sign of j - l
    v_pow: i32,
    s_pow: i32,
}

impl DshTable {
    /// Shared table for `l`, built on first use.
    pub fn get(l: usize) -> Arc<DshTable> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<DshTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().expect("dsh cache poisoned").get(&l) {
            return t.clone();
        }
        let table = Arc::new(DshTable::build(l));
        cache.lock().expect("dsh cache poisoned").entry(l).or_insert(table).clone()
    }

    fn build(l: usize) -> DshTable {
        let mut a = vec![CschPoly::one()];
        for _ in 0..l {
            let prev = a;
            let mut next = vec![CschPoly::default(); prev.len() + 1];
            for (k, ak) in prev.iter().enumerate() {
                let c = ak.times_csch();
                next[k + 1].add(&c);
                next[k].add(&c.derivative());
            }
            a = next;
        }
        let exact = small_series_exact(l, &a);
        let small = exact
            .iter()
            .map(|s| s.iter().map(ratio_to_f64).collect())
            .collect();
        let sin_series = sin_series(l, &exact);
        DshTable { l, a, small, sin_series }
    }

    /// `a_{l,k}(v)` for `k = 0..=l`.
    pub fn coeffs(&self, v: f64) -> Vec<f64> {
        let mut out = self.scaled_coeffs(v);
        let damp = (-(self.l as f64) * v).exp();
        for x in &mut out {
            *x *= damp;
        }
        out
    }

    /// `a_{l,k}(v) · e^{lv}`, bounded for large `v`.
    pub fn scaled_coeffs(&self, v: f64) -> Vec<f64> {
        let l = self.l;
        if l == 0 {
            return vec![1.0];
        }
        if v < SMALL_V {
            let w = v * v;
            let grow = (l as f64 * v).exp();
            return self
                .small
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    let series = s.iter().rev().fold(0.0, |acc, &c| acc * w + c);
                    series * v.powi(k as i32 - 2 * l as i32) * grow
                })
                .collect();
        }
        if v < 1.0 {
            let csch = 1.0 / v.sinh();
            let coth = 1.0 / v.tanh();
            let grow = (l as f64 * v).exp();
            return self.a.iter().map(|p| p.eval(csch, coth) * grow).collect();
        }
        let t = (-v).exp();
        self.a.iter().map(|p| p.eval_scaled(l, t)).collect()
    }

    /// `Σ_k μ^k a_{l,k}(v) e^{lv}`.
    pub fn scaled_amplitude(&self, mu: Complex64, v: f64) -> Complex64 {
        let c = self.scaled_coeffs(v);
        c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &x| acc * mu + x)
    }

    /// `D^l[e^{μv}]`.
    pub fn apply_exp(&self, mu: Complex64, v: f64) -> Complex64 {
        self.scaled_amplitude(mu, v) * (mu * v - self.l as f64 * v).exp()
    }

    /// `D^l[sin(sv)]`, evaluated at `|s|` so that oddness is exact.
    pub fn apply_sin(&self, s: f64, v: f64) -> f64 {
        if s < 0.0 {
            return -self.apply_sin(-s, v);
        }
        let y = s * v;
        if self.l > 0 && v <= 0.5 && y.abs() <= 1.0 {
            return self.sin_small(s, v);
        }
        let c = self.coeffs(v);
        let mut sum = 0.0;
        let mut sk = 1.0;
        for (k, &ak) in c.iter().enumerate() {
            sum += sk * ak * (y + k as f64 * FRAC_PI_2).sin();
            sk *= s;
        }
        sum
    }

    fn sin_small(&self, s: f64, v: f64) -> f64 {
        let y = s * v;
        let mut sum = 0.0;
        // smallest terms first
        for t in self.sin_series.iter().rev() {
            let term = if t.s_pow > 0 {
                t.coeff * s.powi(t.s_pow) * y.powi(t.y_pow)
            } else {
                t.coeff * y.powi(t.y_pow) * v.powi(t.v_pow)
            };
            sum += term;
        }
        sum
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

type Series = Vec<BigRational>;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn series_mul(a: &[BigRational], b: &[BigRational], m: usize) -> Series {
    let mut out = vec![BigRational::zero(); m];
    for (i, ai) in a.iter().enumerate().take(m) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(m - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn series_inverse(a: &[BigRational], m: usize) -> Series {
    let mut out = vec![BigRational::zero(); m];
    let a0 = a[0].clone();
    out[0] = BigRational::one() / &a0;
    for n in 1..m {
        let mut acc = BigRational::zero();
        for k in 1..=n.min(a.len() - 1) {
            acc += &a[k] * &out[n - k];
        }
        out[n] = -acc / &a0;
    }
    out
}

/// Exact `Q_{l,k}` coefficients (in powers of `w = v²`).
fn small_series_exact(l: usize, a: &[CschPoly]) -> Vec<Series> {
    let m = SERIES_TERMS;
    // v/sh v and v·coth v as series in w
    let sinhc: Series = (0..m)
        .map(|i| BigRational::new(BigInt::one(), factorial(2 * i + 1)))
        .collect();
    let cosh: Series = (0..m)
        .map(|i| BigRational::new(BigInt::one(), factorial(2 * i)))
        .collect();
    let s = series_inverse(&sinhc, m);
    let c = series_mul(&cosh, &s, m);
    let jmax = 2 * l + 1;
    let mut pows = vec![{
        let mut one = vec![BigRational::zero(); m];
        one[0] = BigRational::one();
        one
    }];
    for j in 1..=jmax {
        let next = series_mul(&pows[j - 1], &s, m);
        pows.push(next);
    }
    let mut out = Vec::with_capacity(l + 1);
    for (k, ak) in a.iter().enumerate() {
        let top = 2 * l - k; // leading Laurent order
        let mut acc = vec![BigRational::zero(); m];
        let mut push = |order: usize, coeff: i128, series: &Series| {
            // term = coeff · v^{-order} · series(w) ; rewrite as v^{-top} · w^{(top-order)/2} · …
            debug_assert!(order <= top && (top - order).is_multiple_of(2));
            let shift = (top - order) / 2;
            let cf = BigRational::from_integer(BigInt::from(coeff));
            for i in 0..m.saturating_sub(shift) {
                acc[i + shift] += &cf * &series[i];
            }
        };
        for (j, &cj) in ak.p.iter().enumerate() {
            if cj != 0 {
                push(j, cj, &pows[j]);
            }
        }
        for (j, &cj) in ak.q.iter().enumerate() {
            if cj != 0 {
                let cs = series_mul(&c, &pows[j], m);
                push(j + 1, cj, &cs);
            }
        }
        out.push(acc);
    }
    out
}

/// Double series for `D^l[sin(sv)] = v^{-2l} Σ_k y^k sin(y + kπ/2) Q_{l,k}(v²)`
/// expanded in `y = sv` and `v²` with exact cancellation.
fn sin_series(l: usize, q: &[Series]) -> Vec<SinTerm> {
    let mmax = 2 * l + 33;
    let facts: Vec<BigInt> = (0..=mmax).map(factorial).collect();
    let mut terms = Vec::new();
    for m in (1..=mmax).step_by(2) {
        let sign = if (m / 2) % 2 == 0 { 1 } else { -1 };
        for j in 0..SERIES_TERMS {
            let mut b = BigRational::zero();
            for (k, qk) in q.iter().enumerate().take(m.min(l) + 1) {
                b += &qk[j] / BigRational::from_integer(facts[m - k].clone());
            }
            if b.is_zero() {
                continue;
            }
            let b = ratio_to_f64(&b) * sign as f64;
            let (mi, ji, li) = (m as i32, j as i32, l as i32);
            assert!(
                mi + 2 * ji - 2 * li >= 1,
                "uncancelled sin-series term at y^{m} v^{}", 2 * j
            );
            let term = if ji < li {
                SinTerm { coeff: b, y_pow: mi + 2 * ji - 2 * li, v_pow: 0, s_pow: 2 * li - 2 * ji }
            } else {
                SinTerm { coeff: b, y_pow: mi, v_pow: 2 * ji - 2 * li, s_pow: 0 }
            };
            terms.push(term);
        }
    }
    terms
}

/// `D^l_sh[e^{μv}]` for `l ≥ -1`, with `D^{-1}[e^{μv}] = μ^{-1} sh v e^{μv}`.
pub fn dsh_apply_exp(l: i32, mu: Complex64, v: f64) -> Result<Complex64> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(invalid("v", format!("must be positive, got {v}")));
    }
    match l {
        l if l < -1 => Err(invalid("l", format!("must be at least -1, got {l}"))),
        -1 => {
            if !(mu.re < 0.0) {
                return Err(invalid("mu", "D^{-1} needs Re(mu) < 0"));
            }
            Ok(mu.inv() * v.sinh() * (mu * v).exp())
        }
        l => Ok(DshTable::get(l as usize).apply_exp(mu, v)),
    }
}

/// `D^l_sh[sin(sv)]`, real and odd in `s`.
pub fn dsh_apply_sin(l: usize, s: f64, v: f64) -> Result<f64> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(invalid("v", format!("must be positive, got {v}")));
    }
    Ok(DshTable::get(l).apply_sin(s, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    LargeV,
    SmallV,
}

/// One term `s^k · q_k(v)` of an expansion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DshTerm {
    pub k: usize,
    pub coeff: TermCoeff,
}

/// Coefficient function of a term, including the factor `i^k`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum TermCoeff {
    /// `i^k · e^{lv} a_{l,k}(v)`; the term value is this times `e^{-lv}`.
    Large { l: usize, poly: CschPoly },
    /// `i^k · Q(v²)`; the term value is this times `v^{power}`.
    Small { power: i32, series: Vec<f64> },
}

impl DshTerm {
    /// `q_k(v)`, without the regime factor `e^{-lv}` or `v^{k-2l}`.
    pub fn q(&self, v: f64) -> Complex64 {
        let ik = Complex64::i().powu(self.k as u32);
        match &self.coeff {
            TermCoeff::Large { l, poly } => {
                let val = if v < 1.0 {
                    poly.eval(1.0 / v.sinh(), 1.0 / v.tanh()) * (*l as f64 * v).exp()
                } else {
                    poly.eval_scaled(*l, (-v).exp())
                };
                ik * val
            }
            TermCoeff::Small { series, .. } => {
                let w = v * v;
                ik * series.iter().rev().fold(0.0, |acc, &c| acc * w + c)
            }
        }
    }

    /// The full term coefficient, `q_k(v)` times its regime factor.
    pub fn eval(&self, v: f64) -> Complex64 {
        match &self.coeff {
            TermCoeff::Large { l, .. } => self.q(v) * (-(*l as f64) * v).exp(),
            TermCoeff::Small { power, .. } => self.q(v) * v.powi(*power),
        }
    }

    pub fn v_power(&self) -> Option<i32> {
        match &self.coeff {
            TermCoeff::Small { power, .. } => Some(*power),
            TermCoeff::Large { .. } => None,
        }
    }
}

/// `D^l[e^{isv}] = e^{isv} Σ_k s^k q_k(v) × (e^{-lv} or v^{k-2l})`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DshExpansion {
    pub l: usize,
    pub regime: Regime,
    pub terms: Vec<DshTerm>,
}

impl DshExpansion {
    pub fn eval(&self, s: f64, v: f64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut sk = 1.0;
        for t in &self.terms {
            sum += t.eval(v) * sk;
            sk *= s;
        }
        sum * Complex64::from_polar(1.0, s * v)
    }
}

/// Structured expansion of `D^l[e^{isv}]` for the requested regime.
///
/// The small-`v` series is truncated and meant for `v ≤ 1/2`.
pub fn dsh_expansion(l: usize, regime: Regime) -> DshExpansion {
    let table = DshTable::get(l);
    let terms = (0..=l)
        .map(|k| DshTerm {
            k,
            coeff: match regime {
                Regime::LargeV => TermCoeff::Large { l, poly: table.a[k].clone() },
                Regime::SmallV => TermCoeff::Small {
                    power: k as i32 - 2 * l as i32,
                    series: table.small[k].clone(),
                },
            },
        })
        .collect();
    DshExpansion { l, regime, terms }
}

/// Smallest `csch` power in `a_{l,k}`; at least `l` for every `k`.
pub fn min_csch_power(l: usize, k: usize) -> Option<usize> {
    DshTable::get(l).a.get(k).and_then(CschPoly::min_power)
}

//! Deterministic adaptive bisection over a list of panels.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::rules::{filon_legendre, gk15, needs_filon, PanelEstimate};
use crate::error::{Error, Result};

/// `amp(v) · e^{i freq v}`; when `freq == 0` the amplitude is the whole integrand.
pub(crate) struct OscIntegrand<'a> {
    pub amp: &'a dyn Fn(f64) -> Complex64,
    pub freq: f64,
}

impl OscIntegrand<'_> {
    fn panel(&self, a: f64, b: f64) -> PanelEstimate {
        if self.freq != 0.0 && needs_filon(self.freq, b - a) {
            filon_legendre(self.amp, self.freq, a, b)
        } else if self.freq == 0.0 {
            gk15(self.amp, a, b)
        } else {
            let w = self.freq;
            gk15(&|v: f64| (self.amp)(v) * Complex64::from_polar(1.0, w * v), a, b)
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    /// Effective target given the current total and the roundoff scale.
    pub fn target(&self, value: Complex64, abs_scale: f64) -> f64 {
        self.abs.max(self.rel * value.norm()).max(100.0 * f64::EPSILON * abs_scale)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Accum {
    pub value: Complex64,
    pub error: f64,
    pub abs: f64,
    pub panels: usize,
}

impl Accum {
    pub fn add(&mut self, other: Accum) {
        self.value += other.value;
        self.error += other.error;
        self.abs += other.abs;
        self.panels += other.panels;
    }
}

struct Panel {
    a: f64,
    b: f64,
    est: PanelEstimate,
    id: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // largest error first, ties broken by creation order
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error).then_with(|| other.id.cmp(&self.id))
    }
}

/// Integrate over consecutive panels `breaks[i]..breaks[i+1]`, bisecting the
/// worst panel until the summed error meets `tol` relative to `offset + total`.
pub(crate) fn adapt(
    f: &OscIntegrand<'_>,
    breaks: &[f64],
    tol: Tolerance,
    offset: Complex64,
    budget: usize,
) -> Result<Accum> {
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Panel> = Vec::new();
    let mut next_id = 0;
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut abs = 0.0;
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let est = f.panel(w[0], w[1]);
        value += est.value;
        error += est.error;
        abs += est.abs;
        heap.push(Panel { a: w[0], b: w[1], est, id: next_id });
        next_id += 1;
    }
    let mut iterations = 0usize;
    loop {
        let count = heap.len() + done.len();
        if error <= tol.target(offset + value, abs) || heap.is_empty() {
            break;
        }
        // resynchronise running sums once in a while
        iterations += 1;
        if iterations.is_multiple_of(256) {
            (value, error, abs) = totals(heap.iter().chain(done.iter()));
            if error <= tol.target(offset + value, abs) {
                break;
            }
        }
        if count >= budget {
            let (v, e, _) = totals(heap.iter().chain(done.iter()));
            return Err(Error::NonConvergence {
                error: e,
                tolerance: tol.target(offset + v, abs),
                subdivisions: count,
            });
        }
        let worst = heap.pop().expect("heap non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            done.push(worst);
            continue;
        }
        let left = f.panel(worst.a, mid);
        let right = f.panel(mid, worst.b);
        value += left.value + right.value - worst.est.value;
        error = (error + left.error + right.error - worst.est.error).max(0.0);
        abs += left.abs + right.abs - worst.est.abs;
        heap.push(Panel { a: worst.a, b: mid, est: left, id: next_id });
        heap.push(Panel { a: mid, b: worst.b, est: right, id: next_id + 1 });
        next_id += 2;
    }
    let mut all: Vec<Panel> = heap.into_vec();
    all.extend(done);
    all.sort_by(|p, q| p.a.total_cmp(&q.a));
    let (value, error, abs) = totals(all.iter());
    Ok(Accum { value, error, abs, panels: all.len() })
}

fn totals<'a>(panels: impl Iterator<Item = &'a Panel>) -> (Complex64, f64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut e = 0.0;
    let mut a = 0.0;
    for p in panels {
        v += p.est.value;
        e += p.est.error;
        a += p.est.abs;
    }
    (v, e, a)
}

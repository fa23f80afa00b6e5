// Oscillatory integrals with algebraic endpoint singularities.
//
// `cargo run --release --example singular_quadrature`

use axb_kernels::quadrature::{integrate_algebraic_endpoint, integrate_decaying, integrate_singular_osc, QuadSpec};
use axb_kernels::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadSpec::with_tol(1e-12);

    // ∫_0^1 v^{-1/2} dv = 2.
    let r = integrate_algebraic_endpoint(|_| Complex64::new(1.0, 0.0), -0.5, 0.0, 1.0, 0.0, &quad)?;
    println!("∫ v^(-1/2) = {:.15} (err {:.1e}, {} panels)", r.value.re, r.error_estimate, r.subdivisions_used);

    // ∫_0^∞ e^{-v} e^{isv} dv = 1/(1 - is).
    let s = 40.0;
    let q = quad.clone().decay(1.0);
    let r = integrate_algebraic_endpoint(|v| Complex64::new((-v).exp(), 0.0), 0.0, 0.0, f64::INFINITY, s, &q)?;
    println!("∫ e^(-v) e^(i40v) = {:.14}, exact {:.14}", r.value, 1.0 / Complex64::new(1.0, -s));

    // ∫_R^∞ e^{-2v} (ch v - ch R)^{-1/2} e^{isv} dv, the shape behind F_R.
    let q = quad.clone().decay(2.0);
    for &s in &[0.0, 10.0, 1000.0] {
        let r = integrate_singular_osc(|v| Complex64::new((-2.0 * v).exp(), 0.0), -0.5, 0.5, s, f64::INFINITY, &q)?;
        println!("s={s:>6}: {:.12e} (cut at v = {:.1})", r.value, r.truncation_point);
    }

    let r = integrate_decaying(|v| Complex64::new(v * (-v).exp(), 0.0), 0.0, &q.clone().decay(0.9))?;
    println!("∫ v e^(-v) = {:.15}", r.value.re);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Elementary weighted integrals and their envelopes with one fitted constant.
//
// `cargo run --release --example elementary_bounds`

use axb_kernels::estimates::{check_elementary_bounds, elementary_bounds};
use axb_kernels::quadrature::QuadSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadSpec::with_tol(1e-10);
    let b = elementary_bounds(0.5, 4.0, 2.0, 3.0, &quad)?;
    println!("α=0.5 λ=4 t=2 N=3: I₀ = {:.6e} (ratio {:.3}), I∞ = {:.6e} (ratio {:.3})", b.i0, b.ratio0(), b.i_inf, b.ratio_inf());
    // The envelope maximum sits between grid points of a sparse grid, so use doubling steps.
    let lambdas: Vec<f64> = (0..9).map(|k| 0.25 * 2f64.powi(k)).collect();
    let ts: Vec<f64> = std::iter::once(0.0).chain(lambdas.iter().copied()).collect();
    let rep = check_elementary_bounds(1.0, 4.0, &lambdas, &ts, &quad)?;
    println!("α=1 N=4: fitted C = {:.4}, refined {:.4}, pass {}", rep.fitted_constant, rep.refined_constant.unwrap_or(f64::NAN), rep.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Kernel L¹ norms of a family of multipliers against a Sobolev norm.
//
// `cargo run --release --example multiplier_family`

use axb_kernels::estimates::{check_hebisch_steger, hs_family, hs_sobolev_order};
use axb_kernels::quadrature::QuadSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadSpec::with_tol(1e-9);
    let family = hs_family();
    let (lambda, eps) = (4.0, 0.5);
    let s = hs_sobolev_order(2, lambda, eps);
    let rep = check_hebisch_steger(2, &family, lambda, eps, s, &quad)?;
    println!("λ={lambda}, Sobolev order {s}: columns {:?}", rep.columns);
    for (f, row) in family.iter().zip(&rep.rows) {
        println!("  {:<10} {:?}", f.name, row);
    }
    println!("largest ratio {:.4}, pass {}", rep.fitted_constant, rep.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

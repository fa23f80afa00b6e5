// Group law, radial distance, and the radial density `J`.
//
// `cargo run --release --example group_geometry`

use axb_kernels::group::{group_inv, group_mul, monte_carlo_radial, radial_density, radial_distance, integrate_radial, GroupPoint};
use axb_kernels::quadrature::QuadSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = GroupPoint::new(0.3, vec![1.0, -0.5])?;
    let b = GroupPoint::new(-1.2, vec![0.25, 2.0])?;
    let ab = group_mul(&a, &b)?;
    println!("a·b = ({:.6}, {:?})", ab.x, ab.y);
    println!("R(a) = {:.12}, R(a⁻¹) = {:.12}", radial_distance(&a), radial_distance(&group_inv(&a)));

    for n in 1..=3 {
        let j = radial_density(n, 1.0)?;
        println!("n={n}: J(1) = {:.12} ± {:.1e}", j.value, j.error_estimate);
    }
    let exact = 4.0 * std::f64::consts::PI * 1.0f64.sinh();
    println!("n=2 closed form 4πR sh R at R=1: {exact:.12}");

    // ∫ e^{-nx/2} g(R) over the group, radially and by Monte Carlo.
    let g = |r: f64| (-r * r).exp();
    let quad = QuadSpec::with_tol(1e-10).decay(1.0);
    let radial = integrate_radial(2, g, &quad)?;
    let mc = monte_carlo_radial(2, g, 6.0, 60.0, 2_000_000, 7);
    println!("∫ e^(-x) e^(-R²): radial {:.6}, Monte Carlo {:.6} ± {:.6}", radial.value.re, mc.value, mc.std_error);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Resolvent kernels, their closed form when `n = 2`, and the radial ODE.
//
// `cargo run --release --example resolvent`

use axb_kernels::group::{radial_distance, GroupPoint};
use axb_kernels::quadrature::QuadSpec;
use axb_kernels::resolvent::{default_ode_step, f0_profile, f0_small_r_leading, ode_residual, resolvent_kernel, ResolventParams};
use axb_kernels::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadSpec::with_tol(1e-11);
    let nu = Complex64::new(-0.5, -0.5);
    let p = ResolventParams::from_nu(2, nu)?;
    let g = GroupPoint::new(0.4, vec![0.8, -0.3])?;
    let r = radial_distance(&g);
    let k = resolvent_kernel(&p, &g, &quad)?;
    let exact = (-g.x).exp() * (nu * r).exp() / (4.0 * std::f64::consts::PI * r.sinh());
    println!("n=2, ν={nu}: k = {k:.12}, closed form {exact:.12}");

    for n in 1..=3 {
        let p = ResolventParams::from_nu(n, Complex64::new(-1.0, 0.0))?;
        let worst = [1.5, 4.0, 15.0]
            .iter()
            .map(|&d| ode_residual(&p, d, default_ode_step(d), &quad))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let small = f0_profile(&p, 1e-3, &quad)?.re / f0_small_r_leading(n, 1e-3);
        println!("n={n}: worst ODE residual {worst:.2e}, profile / leading term at R=1e-3 = {small:.4}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

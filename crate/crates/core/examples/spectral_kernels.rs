// Kernels of spectral multipliers and of the localized wave propagator.
//
// `cargo run --release --example spectral_kernels`

use axb_kernels::group::GroupPoint;
use axb_kernels::quadrature::QuadSpec;
use axb_kernels::spectral::{default_l, multiplier_kernel, wave_kernel, MultiplierProfile, SpectralTable};
use axb_kernels::transfer::{transfer, RadialR3Kernel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadSpec::with_tol(1e-10);

    // Heat kernel e^{-τL} by subordination, compared with the transferred ℝ³ heat kernel.
    let tau = 0.5;
    let heat = MultiplierProfile::gauss_heat(tau)?;
    let g = GroupPoint::new(0.2, vec![0.9, 0.4])?;
    let k = multiplier_kernel(2, default_l(2), &heat, &g, &quad)?;
    let want = transfer(&RadialR3Kernel::heat(tau)?, &g)?;
    println!("heat kernel: {:.12e}, transferred {want:.12e}", k.value.re);

    // Wave kernel ψ(√L/λ)cos(t√L) along the slice x = 0.
    let (lambda, t) = (8.0, 1.0);
    let psi = MultiplierProfile::bump_band();
    for &y in &[0.5, 1.0, 1.5, 2.5] {
        let g = GroupPoint::new(0.0, vec![y, 0.0])?;
        let w = wave_kernel(2, default_l(2), &psi, lambda, t, &g, &quad)?;
        println!("R={:.4}: k = {:+.10e} ± {:.1e}", w.r, w.value.re, w.error_estimate);
    }

    // One table per R serves every ρ: G(R, ρ) for a whole light-cone profile.
    let table = SpectralTable::for_wave(2, default_l(2), 2.0, &psi, lambda, 6.0, &quad)?;
    let profile: Vec<String> = (0..=6).map(|k| format!("{:+.3e}", table.g(k as f64))).collect();
    println!("G(2, ρ) at ρ = 0..6: {}", profile.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

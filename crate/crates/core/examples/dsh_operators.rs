// The operator `D g = d/dv (g / sh v)` applied to exponentials, and its
// large/small `v` expansions.
//
// `cargo run --release --example dsh_operators`

use axb_kernels::dsh::{dsh_apply_exp, dsh_apply_sin, dsh_expansion, Regime};
use axb_kernels::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mu = Complex64::new(-0.5, 1.5);
    for l in 0..=3 {
        let v = dsh_apply_exp(l, mu, 0.7)?;
        println!("D^{l}[e^(μv)] at v=0.7: {v:.10}");
    }
    // D e^{μv} = e^{μv} (μ - coth v) / sh v.
    let v = 0.7f64;
    let direct = (mu * v).exp() * (mu - 1.0 / v.tanh()) / v.sinh();
    println!("closed form for l=1: {direct:.10}");

    let s = 3.0;
    let large = dsh_expansion(2, Regime::LargeV);
    let small = dsh_expansion(2, Regime::SmallV);
    // Each expansion is meant for its own regime; the small-v series is truncated.
    for (&v, form) in [0.05, 0.5, 4.0].iter().zip([&small, &small, &large]) {
        let sin = dsh_apply_sin(2, s, v)?;
        println!("v={v}: D²[sin sv] = {sin:.10e}, {:?} form Im = {:.10e}", form.regime, form.eval(s, v).im);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

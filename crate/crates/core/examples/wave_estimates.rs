// Pointwise envelope, L¹ growth, and sup-norm of the localized wave kernel.
//
// `cargo run --release --example wave_estimates`

use axb_kernels::estimates::{check_envelope, check_l1_growth, check_supnorm, wave_profile, EnvelopeRegime, EnvelopeSpec, EnvelopeSweep};
use axb_kernels::quadrature::QuadSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadSpec::with_tol(1e-9);

    let spec = EnvelopeSpec::new(2, EnvelopeRegime::LargeR, 4)?;
    let mut sweep = EnvelopeSweep::default_for(EnvelopeRegime::LargeR);
    sweep.lambdas = vec![2.0, 8.0];
    let env = check_envelope(&spec, &sweep, &quad)?;
    println!("envelope: C = {:.4e}, refined {:.4e}, pass {}", env.fitted_constant, env.refined_constant.unwrap_or(f64::NAN), env.pass);

    let lambda = 2.0;
    let l1 = check_l1_growth(2, &wave_profile(lambda), lambda, 0.0, &[4.0, 8.0, 16.0], &quad)?;
    let fit = l1.growth_exponent_fit.expect("growth fit");
    println!("L¹ growth at λ={lambda}: exponent {:.3} ± {:.3} (predicted {})", fit.exponent, fit.std_error, fit.predicted);

    let sup = check_supnorm(2, 4.0, &[0.05, 0.5, 5.0], &quad)?;
    for row in &sup.rows {
        println!("sup-norm: {:?}", row);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// For `n = 2` every radial kernel is a transferred ℝ³ kernel; compare the
// group wave kernel with the Euclidean one.
//
// `cargo run --release --example transfer_oracle`

use axb_kernels::group::GroupPoint;
use axb_kernels::quadrature::QuadSpec;
use axb_kernels::spectral::MultiplierProfile;
use axb_kernels::transfer::cross_validate;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadSpec::with_tol(1e-10);
    let points: Vec<GroupPoint> = [(0.0, 0.5), (0.3, 1.2), (-0.7, 2.0), (1.0, 3.0), (0.0, 4.0)]
        .iter()
        .map(|&(x, y)| GroupPoint::new(x, vec![y, 0.0]))
        .collect::<Result<_, _>>()?;
    for (lambda, t, psi) in [(4.0, 1.0, MultiplierProfile::bump_band()), (0.5, 2.0, MultiplierProfile::bump_low())] {
        let cv = cross_validate(lambda, t, &psi, &points, &quad)?;
        println!("λ={lambda}, t={t}: max relative error {:.2e}", cv.max_rel_error);
        for (r, x, group, euclid, _) in &cv.points {
            println!("  R={r:.4} x={x:+.2}: group {group:+.10e}  transferred {euclid:+.10e}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

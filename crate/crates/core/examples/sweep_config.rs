// Drive a sweep from a configuration, the same path the `axb` binary uses.
//
// `cargo run --release --example sweep_config`

use axb_kernels::report::{run, Format, SweepConfig, Task, EXIT_OK};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut config = SweepConfig::default_for(Task::Kernel);
    config.lambda = vec![4.0];
    config.r = vec![0.5, 1.0, 1.5, 2.0];
    config.threads = 1;
    println!("{}", serde_json::to_string_pretty(&config)?);

    let outcome = run(&config);
    assert_eq!(outcome.exit_code, EXIT_OK, "{:?}", outcome.error);
    let artifact = outcome.artifact.expect("artifact on success");
    print!("{}", artifact.render(Format::Csv));

    let mut suite = SweepConfig::default_for(Task::ResolventSuite);
    suite.threads = 1;
    let outcome = run(&suite);
    let report = outcome.artifact.expect("artifact").report;
    println!("resolvent suite pass = {}, checks = {}", report["pass"], report["checks"]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

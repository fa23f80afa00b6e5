use std::process::{Command, Output};

fn axb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axb")).args(args).env_remove("AXB_THREADS").output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn kernel_writes_csv() {
    let out = axb(&["kernel", "--n", "2", "--lambda", "8", "--t", "1", "--R", "0.1:6:50", "--threads", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.split("\r\n").filter(|l| !l.is_empty()).collect();
    assert_eq!(lines[0], "R,x,Re k,Im k,err");
    assert_eq!(lines.len(), 51);
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first.len(), 5);
    assert!((first[0] - 0.1).abs() < 1e-15);
}

#[test]
fn oracle_reports_max_relative_error() {
    let out = axb(&["oracle", "--lambda", "4", "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["summary"]["max_rel_error"].as_f64().unwrap() <= 1e-4);
    assert_eq!(v["schema_version"], "1.0.0");
    assert_eq!(v["pass"], true);
    assert!(v["git_describe"].is_string() && v["wall_clock_seconds"].is_number());
    assert_eq!(v["config"]["task"], "oracle");
}

#[test]
fn envelope_emits_estimate_report() {
    let out = axb(&["envelope", "--n", "2", "--regime", "large-R", "--lambda", "2,8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rep = &v["reports"][0];
    for key in ["check", "grid", "fitted_constant", "refined_constant", "pass", "runtime_seconds"] {
        assert!(!rep[key].is_null(), "missing {key}");
    }
}

#[test]
fn failed_check_exits_1_with_failure_list() {
    let out = axb(&["oracle", "--lambda", "4", "--t", "1", "--tol", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["failures"][0], "oracle/lambda=4/t=1");
}

#[test]
fn invalid_config_exits_2() {
    for args in [&["kernel", "--R", "1", "--x", "2"][..], &["kernel", "--lambda", "-1"], &["kernel", "--psi", "bump-low", "--R", "1"], &["nope"]] {
        let out = axb(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn numerical_failure_exits_3() {
    let out = axb(&["kernel", "--R", "1", "--max-subdivisions", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("converge"));
}

#[test]
fn config_file_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    let csv = dir.path().join("out.csv");
    let mut config = axb_kernels::report::SweepConfig::default_for(axb_kernels::report::Task::Kernel);
    config.lambda = vec![2.0];
    config.r = vec![0.5, 1.5];
    config.output = Some(csv.clone());
    std::fs::write(&cfg, serde_json::to_string(&config).unwrap()).unwrap();
    let out = axb(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 3);

    std::fs::write(&cfg, r#"{"task": "teleport"}"#).unwrap();
    assert_eq!(axb(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_axb"))
        .args(["oracle", "--lambda", "4", "--t", "1", "--threads", "1"])
        .env("AXB_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(json(&out)["threads"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_axb")).args(["oracle"]).env("AXB_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::config::{Format, SweepConfig, Task};
use super::suites::{resolvent_suite, Check};
use super::{git_describe, Table, REPORT_SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::estimates::{
    check_envelope, check_hebisch_steger, check_l1_growth, check_supnorm, hs_family, hs_sobolev_order, EnvelopeSpec, EnvelopeSweep,
    EstimateReport, DECAY_WINDOW,
};
use crate::group::GroupPoint;
use crate::spectral::{check_wave_profile, default_l, wave_kernel};
use crate::transfer::cross_validate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter { .. } | Error::DimensionMismatch { .. } | Error::Config(_) | Error::Io(_) => EXIT_INVALID,
        _ => EXIT_NUMERICAL,
    }
}

/// The numeric table and the JSON report of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub table: Table,
    pub report: serde_json::Value,
}

impl Artifact {
    /// The artifact in the configured output format.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.table.to_csv(),
            Format::Json => serde_json::to_string_pretty(&self.report).expect("report serialises") + "\n",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub artifact: Option<Artifact>,
    pub error: Option<String>,
}

impl RunOutcome {
    fn failed(e: &Error) -> Self {
        RunOutcome { exit_code: exit_code_for(e), artifact: None, error: Some(e.to_string()) }
    }
}

/// Run one task on a dedicated thread pool, write the artifact when an
/// output path is configured, and map the result to an exit code.
pub fn run(config: &SweepConfig) -> RunOutcome {
    if let Err(e) = config.validate() {
        return RunOutcome::failed(&e);
    }
    let threads = match config.effective_threads() {
        Ok(t) => t,
        Err(e) => return RunOutcome::failed(&e),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return RunOutcome::failed(&Error::Config(e.to_string())),
    };
    let start = Instant::now();
    let result = pool.install(|| execute(config));
    let Computed { table, checks, reports, summary } = match result {
        Ok(v) => v,
        Err(e) => return RunOutcome::failed(&e),
    };
    let failures: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let report = json!({
        "schema_version": REPORT_SCHEMA_VERSION,
        "task": config.task,
        "git_describe": git_describe(),
        "wall_clock_seconds": start.elapsed().as_secs_f64(),
        "threads": threads,
        "config": config,
        "pass": failures.is_empty(),
        "checks": checks,
        "failures": failures,
        "summary": summary,
        "reports": reports,
        "table": table,
    });
    let exit_code = if failures.is_empty() { EXIT_OK } else { EXIT_FAILED };
    let artifact = Artifact { table, report };
    if let Some(path) = &config.output {
        if let Err(e) = std::fs::write(path, artifact.render(config.format)) {
            return RunOutcome::failed(&Error::from(e));
        }
    }
    RunOutcome { exit_code, artifact: Some(artifact), error: None }
}

fn report_table(prefix: &[(&str, f64)], reports: &[EstimateReport]) -> Table {
    let mut columns: Vec<String> = prefix.iter().map(|(c, _)| c.to_string()).collect();
    if let Some(r) = reports.first() {
        columns.extend(r.columns.iter().cloned());
    }
    let mut table = Table { columns, rows: Vec::new() };
    for r in reports {
        for row in &r.rows {
            let mut full: Vec<f64> = prefix.iter().map(|(_, v)| *v).collect();
            full.extend(row);
            table.rows.push(full);
        }
    }
    table
}

fn with_leading(name: &str, values: &[f64], reports: &[EstimateReport]) -> Table {
    let mut table = Table::new(&[name]);
    if let Some(r) = reports.first() {
        table.columns.extend(r.columns.iter().cloned());
    }
    for (v, r) in values.iter().zip(reports) {
        for row in &r.rows {
            let mut full = vec![*v];
            full.extend(row);
            table.rows.push(full);
        }
    }
    table
}

fn report_check(r: &EstimateReport) -> Check {
    Check { name: r.check.clone(), pass: r.pass, value: r.fitted_constant, threshold: f64::INFINITY }
}

/// `(x, y)` with `y = (|y|, 0, …)` at radial distance `r` from the identity.
fn point_at(n: usize, x: f64, r: f64) -> Result<GroupPoint> {
    let y2 = 2.0 * x.exp() * (r.cosh() - x.cosh());
    let mut y = vec![0.0; n];
    y[0] = y2.max(0.0).sqrt();
    GroupPoint::new(x, y)
}

/// Everything a task produces before it is serialised.
#[derive(Debug, Clone, PartialEq)]
pub struct Computed {
    pub table: Table,
    pub checks: Vec<Check>,
    pub reports: Vec<EstimateReport>,
    /// Task specific headline numbers; `null` when the checks say it all.
    pub summary: serde_json::Value,
}

impl Computed {
    fn new(table: Table, checks: Vec<Check>, reports: Vec<EstimateReport>) -> Self {
        Computed { table, checks, reports, summary: serde_json::Value::Null }
    }
}

/// Compute a task without writing anything.
pub fn execute(config: &SweepConfig) -> Result<Computed> {
    let quad = &config.quad;
    let n = config.n;
    match config.task {
        Task::Kernel => {
            let (lambda, t) = (config.lambda[0], config.t[0]);
            let psi = config.psi.profile(lambda);
            check_wave_profile(&psi, lambda)?;
            let l = config.l.unwrap_or(default_l(n));
            let rows: Vec<Result<Vec<f64>>> = config
                .r
                .par_iter()
                .map(|&r| {
                    let g = point_at(n, config.x, r)?;
                    let k = wave_kernel(n, l, &psi, lambda, t, &g, quad)?;
                    Ok(vec![r, config.x, k.value.re, k.value.im, k.error_estimate])
                })
                .collect();
            let mut table = Table::new(&["R", "x", "Re k", "Im k", "err"]);
            table.rows = rows.into_iter().collect::<Result<_>>()?;
            Ok(Computed::new(table, Vec::new(), Vec::new()))
        }
        Task::Envelope => {
            let spec = EnvelopeSpec::new(n, config.regime, config.decay_order)?;
            let sweep = EnvelopeSweep {
                lambdas: config.lambda.clone(),
                radii: config.r.clone(),
                lambda_rho_max: DECAY_WINDOW,
                lambda_rho_step: EnvelopeSweep::default_for(config.regime).lambda_rho_step,
            };
            let rep = check_envelope(&spec, &sweep, quad)?;
            let table = report_table(&[], std::slice::from_ref(&rep));
            let mut check = report_check(&rep);
            check.value = rep.drift().unwrap_or(f64::NAN);
            check.threshold = crate::estimates::STABILITY_DRIFT;
            Ok(Computed::new(table, vec![check], vec![rep]))
        }
        Task::L1growth => {
            let reports = config
                .lambda
                .iter()
                .map(|&lambda| check_l1_growth(n, &config.psi.profile(lambda), lambda, config.epsilon, &config.t, quad))
                .collect::<Result<Vec<_>>>()?;
            let checks = reports
                .iter()
                .map(|r| {
                    let fit = r.growth_exponent_fit.expect("growth reports carry a fit");
                    Check { name: r.check.clone(), pass: r.pass, value: fit.exponent, threshold: fit.predicted + crate::estimates::EXPONENT_BAND }
                })
                .collect();
            Ok(Computed::new(with_leading("lambda", &config.lambda, &reports), checks, reports))
        }
        Task::Supnorm => {
            let reports = config.lambda.iter().map(|&lambda| check_supnorm(n, lambda, &config.t, quad)).collect::<Result<Vec<_>>>()?;
            let checks = reports.iter().map(report_check).collect();
            Ok(Computed::new(with_leading("lambda", &config.lambda, &reports), checks, reports))
        }
        Task::Hs => {
            let family = hs_family();
            let reports = config
                .lambda
                .iter()
                .map(|&lambda| {
                    let s = config.sobolev_order.unwrap_or_else(|| hs_sobolev_order(n, lambda, config.epsilon));
                    check_hebisch_steger(n, &family, lambda, config.epsilon, s, quad)
                })
                .collect::<Result<Vec<_>>>()?;
            let checks = reports.iter().map(report_check).collect();
            Ok(Computed::new(with_leading("lambda", &config.lambda, &reports), checks, reports))
        }
        Task::Oracle => {
            if n != 2 {
                return Err(Error::Config(format!("the transfer oracle needs n = 2, got {n}")));
            }
            let (lambda, t) = (config.lambda[0], config.t[0]);
            let psi = config.psi.profile(lambda);
            let points = config.r.iter().map(|&r| point_at(2, config.x, r)).collect::<Result<Vec<_>>>()?;
            let cv = cross_validate(lambda, t, &psi, &points, quad)?;
            let mut table = Table::new(&["R", "x", "group", "transferred", "rel_error"]);
            table.rows = cv.points.iter().map(|p| vec![p.0, p.1, p.2, p.3, p.4]).collect();
            let check = Check::at_most(&format!("oracle/lambda={lambda}/t={t}"), cv.max_rel_error, config.tolerance);
            let mut out = Computed::new(table, vec![check], Vec::new());
            out.summary = json!({ "lambda": lambda, "t": t, "max_rel_error": cv.max_rel_error });
            Ok(out)
        }
        Task::ResolventSuite => {
            let checks = resolvent_suite(config.seed, quad)?;
            let mut table = Table::new(&["index", "value", "threshold", "pass"]);
            table.rows = checks.iter().enumerate().map(|(i, c)| vec![i as f64, c.value, c.threshold, c.pass as u8 as f64]).collect();
            Ok(Computed::new(table, checks, Vec::new()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_have_requested_distance() {
        let g = point_at(3, -0.4, 1.3).unwrap();
        assert!((crate::group::radial_distance(&g) - 1.3).abs() < 1e-12);
    }

    #[test]
    fn invalid_config_exits_2() {
        let mut c = SweepConfig::default_for(Task::Kernel);
        c.r.clear();
        let out = run(&c);
        assert_eq!(out.exit_code, EXIT_INVALID);
        assert!(out.error.is_some());
    }

    #[test]
    fn kernel_task_is_deterministic() {
        let mut c = SweepConfig::default_for(Task::Kernel);
        c.lambda = vec![2.0];
        c.r = vec![0.5, 1.0, 2.0];
        c.threads = 1;
        let a = run(&c);
        assert_eq!(a.exit_code, EXIT_OK);
        let b = run(&c);
        let csv = a.artifact.unwrap().render(Format::Csv);
        assert_eq!(csv, b.artifact.unwrap().render(Format::Csv));
        assert!(csv.starts_with("R,x,Re k,Im k,err\r\n"));
        assert_eq!(csv.lines().count(), 4);
    }
}

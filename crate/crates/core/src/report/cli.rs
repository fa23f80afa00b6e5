use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::config::{parse_grid, Format, ProfileChoice, SweepConfig, Task};
use super::run::{run, EXIT_INVALID, EXIT_OK};
use crate::error::{Error, Result};
use crate::estimates::{EnvelopeRegime, EnvelopeSweep};

#[derive(Debug, Parser)]
#[command(name = "axb", version, about = "Spectral multiplier and wave kernels on ax+b groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wave kernel along a radial slice.
    Kernel(Overrides),
    /// Pointwise envelope constants.
    Envelope(Overrides),
    /// L¹ growth of the rescaled wave kernel.
    #[command(name = "l1growth")]
    L1growth(Overrides),
    /// Sup-norm growth for small times.
    Supnorm(Overrides),
    /// Spectral multiplier family against the Sobolev bound.
    Hs(Overrides),
    /// Group kernel against the three dimensional Euclidean transfer (n = 2).
    Oracle(Overrides),
    /// Resolvent closed forms, ODE residuals, continuation and small-R ratios.
    ResolventSuite(Overrides),
    /// Run a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
}

/// Flags overriding the task defaults. Grids take `a:b:count` or `v1,v2,…`.
#[derive(Debug, Default, Args)]
pub struct Overrides {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, value_name = "GRID")]
    pub lambda: Option<String>,
    #[arg(long, value_name = "GRID")]
    pub t: Option<String>,
    #[arg(long = "R", value_name = "GRID")]
    pub r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, value_enum)]
    pub psi: Option<ProfileChoice>,
    #[arg(long, value_enum)]
    pub regime: Option<EnvelopeRegime>,
    #[arg(long)]
    pub decay_order: Option<u32>,
    #[arg(long)]
    pub sobolev_order: Option<f64>,
    /// Pass threshold for the oracle.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub max_subdivisions: Option<usize>,
    #[arg(long)]
    pub tail_cutoff_decades: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; 0 uses all cores. `AXB_THREADS` takes precedence.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl Overrides {
    pub fn apply(&self, c: &mut SweepConfig) -> Result<()> {
        if let Some(v) = self.n {
            c.n = v;
        }
        if self.l.is_some() {
            c.l = self.l;
        }
        if let Some(g) = &self.lambda {
            c.lambda = parse_grid(g)?;
        }
        if let Some(g) = &self.t {
            c.t = parse_grid(g)?;
        }
        if let Some(v) = self.regime {
            c.regime = v;
            if c.task == Task::Envelope && self.r.is_none() {
                c.r = EnvelopeSweep::default_for(v).radii;
            }
        }
        if let Some(g) = &self.r {
            c.r = parse_grid(g)?;
        }
        if let Some(v) = self.x {
            c.x = v;
        }
        if let Some(v) = self.eps {
            c.epsilon = v;
        }
        if let Some(v) = self.psi {
            c.psi = v;
        }
        if let Some(v) = self.decay_order {
            c.decay_order = v;
        }
        if self.sobolev_order.is_some() {
            c.sobolev_order = self.sobolev_order;
        }
        if let Some(v) = self.tol {
            c.tolerance = v;
        }
        if let Some(v) = self.rel_tol {
            c.quad.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            c.quad.abs_tol = v;
        }
        if let Some(v) = self.max_subdivisions {
            c.quad.max_subdivisions = v;
        }
        if let Some(v) = self.tail_cutoff_decades {
            c.quad.tail_cutoff_decades = v;
        }
        if let Some(v) = self.format {
            c.format = v;
        }
        if self.output.is_some() {
            c.output = self.output.clone();
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.threads {
            c.threads = v;
        }
        Ok(())
    }
}

/// Build the sweep configuration a command line describes.
pub fn config_from(cli: &Cli) -> Result<SweepConfig> {
    let (task, overrides) = match &cli.command {
        Command::Kernel(o) => (Task::Kernel, o),
        Command::Envelope(o) => (Task::Envelope, o),
        Command::L1growth(o) => (Task::L1growth, o),
        Command::Supnorm(o) => (Task::Supnorm, o),
        Command::Hs(o) => (Task::Hs, o),
        Command::Oracle(o) => (Task::Oracle, o),
        Command::ResolventSuite(o) => (Task::ResolventSuite, o),
        Command::Run { config, overrides } => {
            let text = std::fs::read_to_string(config)?;
            let mut c: SweepConfig = serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
            overrides.apply(&mut c)?;
            return Ok(c);
        }
    };
    let mut c = SweepConfig::default_for(task);
    overrides.apply(&mut c)?;
    Ok(c)
}

/// Parse `args`, run, write the artifact to `stdout` unless an output file is
/// set, and report failures on `stderr`. Returns the exit code.
pub fn main_with<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let config = match config_from(&cli) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "{}", serde_json::json!({ "error": e.to_string() }));
            return super::run::exit_code_for(&e);
        }
    };
    let outcome = run(&config);
    if let Some(err) = &outcome.error {
        let _ = writeln!(stderr, "{}", serde_json::json!({ "error": err }));
    }
    if let Some(artifact) = &outcome.artifact {
        if config.output.is_none() {
            let _ = stdout.write_all(artifact.render(config.format).as_bytes());
        }
        if outcome.exit_code != EXIT_OK {
            let failures = &artifact.report["failures"];
            let _ = writeln!(stderr, "{}", serde_json::json!({ "failures": failures }));
        }
    }
    outcome.exit_code
}

pub fn main() -> i32 {
    main_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

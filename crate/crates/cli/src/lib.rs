//! Command-line front end for `mirror-drag`.
//!
//! Numbers are written in shortest round-trip form so that parsing any CSV
//! or JSON field recovers the exact binary value.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mirror_drag::drag::DragReport;
use mirror_drag::dynamics::{self, MirrorParams, DEFAULT_STEP};
use mirror_drag::quadrature::QuadratureSpec;
use mirror_drag::units::{self, PhysicalConstants, ReducedKind};
use mirror_drag::{Beta, Temperature};
use serde::Serialize;

pub mod verify;

pub const CSV_HEADER: &str = "beta,gamma,f_hat,p_parallel_hat,ratio,f_kin_hat,f_si_pa";
pub const TRAJECTORY_HEADER: &str = "tau,t_seconds,beta,gamma";

#[derive(Debug, Parser)]
#[command(name = "mirror-drag", version, about = "Blackbody radiation drag on a relativistic mirror")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the drag at a single velocity.
    Eval(EvalArgs),
    /// Tabulate the drag over a velocity grid as CSV.
    Sweep(SweepArgs),
    /// Run the verification suites and print a JSON report.
    Verify(VerifyArgs),
    /// Integrate the deceleration of a mirror released at `beta0`.
    Trajectory(TrajectoryArgs),
    /// Print the physical constants in use.
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    #[value(name = "log_one_minus_beta")]
    LogOneMinusBeta,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long = "temperature-kelvin")]
    pub temperature_kelvin: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Also compute the kinetic flux drag by quadrature.
    #[arg(long)]
    pub with_oracles: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub beta_start: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta_end: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "linear")]
    pub spacing: Spacing,
    #[arg(long = "temperature-kelvin")]
    pub temperature_kelvin: Option<f64>,
    #[arg(long)]
    pub with_oracles: bool,
    /// Destination file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: verify::Suite,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
    pub samples: u64,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    #[arg(long)]
    pub beta0: f64,
    #[arg(long = "areal-mass-kg-m2")]
    pub areal_mass_kg_m2: f64,
    #[arg(long = "temperature-kelvin")]
    pub temperature_kelvin: f64,
    #[arg(long)]
    pub tau_end: f64,
    #[arg(long, default_value_t = DEFAULT_STEP)]
    pub dt: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Failure classes, each tied to one exit code.
#[derive(Debug)]
pub enum CliError {
    VerificationFailed,
    Usage(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::VerificationFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<mirror_drag::Error> for CliError {
    fn from(e: mirror_drag::Error) -> Self {
        match e {
            mirror_drag::Error::Usage(_) => CliError::Usage(e.to_string()),
            mirror_drag::Error::Numerical { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("serialization error: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Runs a parsed command, writing results to `stdout` unless a file is named.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Eval(args) => eval(&args, stdout),
        Command::Sweep(args) => sweep(&args, stdout),
        Command::Verify(args) => run_verify(&args, stdout),
        Command::Trajectory(args) => trajectory(&args, stdout),
        Command::Constants => constants(stdout),
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn temperature(kelvin: Option<f64>) -> CliResult<Option<Temperature>> {
    Ok(kelvin.map(Temperature::new).transpose()?)
}

/// One drag evaluation, as shared by `eval` and `sweep`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub report: DragReport,
    pub f_si_pa: Option<f64>,
    pub p_si_pa: Option<f64>,
}

pub fn evaluate(beta: Beta, temperature: Option<Temperature>, with_oracles: bool) -> CliResult<Point> {
    let mut report = DragReport::new(beta);
    if with_oracles {
        report = report.with_kinetic(&QuadratureSpec::default())?;
    }
    let k = PhysicalConstants::CODATA_2018;
    let f_si_pa = temperature.map(|t| units::to_si(report.f_hat, ReducedKind::ForceDensity, t, &k));
    let p_si_pa = temperature.map(|t| units::to_si(report.p_hat, ReducedKind::Pressure, t, &k));
    Ok(Point { report, f_si_pa, p_si_pa })
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// The fixed-schema CSV fields for one point, without a line ending.
pub fn csv_row(point: &Point) -> String {
    let r = &point.report;
    let mut line = String::new();
    write!(
        line,
        "{},{},{},{},{},{},{}",
        fmt_f64(r.beta.value()),
        fmt_f64(r.gamma),
        fmt_f64(r.f_hat),
        fmt_f64(r.p_parallel_hat.0),
        fmt_f64(r.ratio),
        opt(r.f_kin_hat),
        opt(point.f_si_pa),
    )
    .expect("writing to a String");
    line
}

#[derive(Debug, Serialize)]
struct EvalJson {
    beta: f64,
    gamma: f64,
    f_hat: f64,
    p_hat: f64,
    ratio: f64,
    p_parallel_hat: f64,
    regime: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_kin_hat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    temperature_kelvin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_si_pa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_si_pa: Option<f64>,
}

fn eval(args: &EvalArgs, out: &mut dyn Write) -> CliResult<()> {
    let beta = Beta::new(args.beta)?;
    let t = temperature(args.temperature_kelvin)?;
    let point = evaluate(beta, t, args.with_oracles)?;
    match args.format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER},p_hat,regime")?;
            let r = &point.report;
            writeln!(out, "{},{},{}", csv_row(&point), fmt_f64(r.p_hat), r.regime)?;
        }
        Format::Json => {
            let r = &point.report;
            let json = EvalJson {
                beta: r.beta.value(),
                gamma: r.gamma,
                f_hat: r.f_hat,
                p_hat: r.p_hat,
                ratio: r.ratio,
                p_parallel_hat: r.p_parallel_hat.0,
                regime: r.regime.as_str(),
                f_kin_hat: r.f_kin_hat,
                temperature_kelvin: t.map(Temperature::kelvin),
                f_si_pa: point.f_si_pa,
                p_si_pa: point.p_si_pa,
            };
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Grid of `steps` velocities from `start` to `end`, endpoints exact.
pub fn sweep_grid(start: f64, end: f64, steps: usize, spacing: Spacing) -> CliResult<Vec<Beta>> {
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    let (lo, hi) = (Beta::new(start)?, Beta::new(end)?);
    if lo.value() >= hi.value() {
        return Err(CliError::Usage(format!("--beta-start {start} must be below --beta-end {end}")));
    }
    let last = steps - 1;
    let mut grid = Vec::with_capacity(steps);
    for i in 0..steps {
        let s = i as f64 / last as f64;
        let v = if i == 0 {
            start
        } else if i == last {
            end
        } else {
            match spacing {
                Spacing::Linear => start + (end - start) * s,
                Spacing::LogOneMinusBeta => {
                    let (a, b) = ((-start).ln_1p(), (-end).ln_1p());
                    -(a + (b - a) * s).exp_m1()
                }
            }
        };
        grid.push(Beta::new(v)?);
    }
    Ok(grid)
}

fn sweep(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let grid = sweep_grid(args.beta_start, args.beta_end, args.steps, args.spacing)?;
    let t = temperature(args.temperature_kelvin)?;
    let points = grid
        .into_iter()
        .map(|b| evaluate(b, t, args.with_oracles))
        .collect::<CliResult<Vec<_>>>()?;
    with_output(args.output.as_deref(), stdout, |out| {
        writeln!(out, "{CSV_HEADER}")?;
        for p in &points {
            writeln!(out, "{}", csv_row(p))?;
        }
        Ok(())
    })
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> CliResult<()> {
    match path {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
        }
        None => body(stdout)?,
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let opts = verify::VerifyOptions { seed: args.seed, samples: args.samples };
    let report = verify::run(args.suite, &opts)?;
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    if report.overall_pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn trajectory(args: &TrajectoryArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let beta0 = Beta::new(args.beta0)?;
    let bath = Temperature::new(args.temperature_kelvin)?;
    let params = MirrorParams::new(args.areal_mass_kg_m2, bath)?;
    let t_c = dynamics::reduced_time_scale(&params, &PhysicalConstants::CODATA_2018);
    let points = dynamics::integrate_trajectory(beta0, args.tau_end, args.dt)?;
    with_output(args.output.as_deref(), stdout, |out| {
        writeln!(out, "{TRAJECTORY_HEADER}")?;
        for p in &points {
            writeln!(
                out,
                "{},{},{},{}",
                fmt_f64(p.tau),
                fmt_f64(p.tau * t_c),
                fmt_f64(p.beta.value()),
                fmt_f64(p.gamma.value())
            )?;
        }
        Ok(())
    })
}

#[derive(Debug, Serialize)]
struct ConstantsJson {
    c: f64,
    hbar: f64,
    k_b: f64,
    sigma: f64,
}

fn constants(out: &mut dyn Write) -> CliResult<()> {
    let k = PhysicalConstants::CODATA_2018;
    let json = ConstantsJson { c: k.c, hbar: k.hbar, k_b: k.k_b, sigma: k.stefan_boltzmann() };
    serde_json::to_writer_pretty(&mut *out, &json)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        for spacing in [Spacing::Linear, Spacing::LogOneMinusBeta] {
            let g = sweep_grid(0.1, 0.999_9, 7, spacing).unwrap();
            assert_eq!(g.len(), 7);
            assert_eq!(g[0].value(), 0.1);
            assert_eq!(g[6].value(), 0.999_9);
            assert!(g.windows(2).all(|w| w[0].value() < w[1].value()));
        }
    }

    #[test]
    fn log_spacing_is_geometric_in_one_minus_beta() {
        let g = sweep_grid(0.9, 0.999_99, 5, Spacing::LogOneMinusBeta).unwrap();
        let gaps: Vec<f64> = g.iter().map(|b| 1.0 - b.value()).collect();
        for w in gaps.windows(2) {
            assert!((w[0] / w[1] - 10.0).abs() < 1e-6, "{gaps:?}");
        }
    }

    #[test]
    fn bad_grids_are_usage_errors() {
        assert!(matches!(sweep_grid(0.5, 0.5, 3, Spacing::Linear), Err(CliError::Usage(_))));
        assert!(matches!(sweep_grid(0.0, 0.5, 1, Spacing::Linear), Err(CliError::Usage(_))));
        assert!(matches!(sweep_grid(0.0, 1.0, 3, Spacing::Linear), Err(CliError::Usage(_))));
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        let numerical = mirror_drag::Error::Numerical { message: "budget".into(), estimate: 1.0, error_estimate: 0.5 };
        assert_eq!(CliError::from(numerical).code(), 3);
        assert_eq!(CliError::from(Beta::new(2.0).unwrap_err()).code(), 2);
        assert_eq!(CliError::VerificationFailed.code(), 1);
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1.1237e-14, 5.670_374_419e-8, 299_792_458.0, -0.0, f64::MIN_POSITIVE] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}

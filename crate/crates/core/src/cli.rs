//! Command-line front end: spectrum tables, sampled mode profiles and the
//! verification suites, written as CSV or JSON.
//!
//! Settings resolve as flags > config file (TOML) > built-in defaults.
//! Exit status is 0 on success, 1 when a verification check fails (or the
//! computation itself errors), 2 on invalid usage.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::modes::{build_mode, interior_grid, potential, spectrum, ModeKind, ModeSpec, SpacetimePoint};
use crate::verify::{run_suite, Suite, SuiteReport, VerifyConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "dkp-s3", version, about = "Maxwell modes on the static 3-sphere in Duffin-Kemmer form")]
pub struct Cli {
    /// TOML file with default settings; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output format [default: csv].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file [default: standard output].
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of eigenfrequencies ω = (n + 1 + j) c/ρ.
    Spectrum(SpectrumArgs),
    /// Radial amplitudes of one mode sampled on a χ-grid.
    Mode(ModeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Default)]
pub struct SpectrumArgs {
    /// Smallest j [default: 1].
    #[arg(long)]
    pub j_min: Option<u32>,
    /// Largest j [default: 10]; below j-min gives an empty table.
    #[arg(long)]
    pub j_max: Option<u32>,
    /// Largest n [default: 10].
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Curvature radius ρ [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    /// Light speed c [default: 1].
    #[arg(long = "c-light", allow_hyphen_values = true)]
    pub c_light: Option<f64>,
}

#[derive(Debug, Args, Default)]
pub struct ModeArgs {
    /// magnetic or electric [default: magnetic].
    #[arg(long)]
    pub kind: Option<ModeKind>,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    #[arg(long = "c-light", allow_hyphen_values = true)]
    pub c_light: Option<f64>,
    /// Number of χ samples, at least 16 [default: 128].
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Distance of the grid from the poles χ = 0, π [default: 0.02].
    #[arg(long)]
    pub chi_margin: Option<f64>,
    /// Also emit the 4-potential on this θ slice.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Azimuth of the potential slice [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Time of the potential slice [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Rescale so that max |f2| = 1 on the grid.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args, Default)]
pub struct VerifyArgs {
    /// algebra, geometry, angular, radial, gauge or full.
    #[arg(long)]
    pub suite: Option<Suite>,
    /// Override one tolerance, e.g. `--tolerance dkp=2e-5`; repeatable.
    #[arg(long = "tolerance", value_name = "KEY=VAL")]
    pub tolerances: Vec<String>,
    /// Frequency offset injected into on-shell checks (negative control).
    #[arg(long, allow_hyphen_values = true)]
    pub detune: Option<f64>,
    /// Seed for randomly drawn sample points.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Layout of the optional TOML config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub spectrum: SpectrumFile,
    #[serde(default)]
    pub mode: ModeFile,
    #[serde(default)]
    pub verify: VerifyFile,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumFile {
    pub j_min: Option<u32>,
    pub j_max: Option<u32>,
    pub n_max: Option<u32>,
    pub rho: Option<f64>,
    pub c_light: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeFile {
    pub kind: Option<ModeKind>,
    pub j: Option<u32>,
    pub n: Option<u32>,
    pub m: Option<i32>,
    pub rho: Option<f64>,
    pub c_light: Option<f64>,
    pub grid_points: Option<usize>,
    pub chi_margin: Option<f64>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub t: Option<f64>,
    pub normalize: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyFile {
    pub suite: Option<Suite>,
    pub detune: Option<f64>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumConfig {
    pub j_min: u32,
    pub j_max: u32,
    pub n_max: u32,
    pub rho: f64,
    pub c_light: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeConfig {
    pub kind: ModeKind,
    pub j: u32,
    pub n: u32,
    pub m: i32,
    pub rho: f64,
    pub c_light: f64,
    pub grid_points: usize,
    pub chi_margin: f64,
    pub theta: Option<f64>,
    pub phi: f64,
    pub t: f64,
    pub normalize: bool,
    pub omega_dimensionless: u32,
    pub omega_physical: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRunConfig {
    pub suite: Suite,
    #[serde(flatten)]
    pub settings: VerifyConfig,
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum RunConfig {
    Spectrum(SpectrumConfig),
    Mode(ModeConfig),
    Verify(VerifyRunConfig),
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, file contents or parameter combinations (exit 2).
    Usage(String),
    /// Numerical or I/O failure while running (exit 1).
    Runtime(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Runtime(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Argument(_) | Error::Domain { .. } | Error::Constraint(_) => CliError::Usage(e.to_string()),
            Error::Numerical(_) => CliError::Runtime(e.to_string()),
        }
    }
}

/// Rendered output plus whether every verification check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub success: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn load_file_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config file {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| usage(format!("invalid config file {}: {e}", path.display())))
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("{name} must be a positive number, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("{name} must be finite, got {v}")))
    }
}

pub fn resolve_spectrum(args: &SpectrumArgs, file: &SpectrumFile) -> Result<SpectrumConfig, CliError> {
    let j_min = args.j_min.or(file.j_min).unwrap_or(1);
    if j_min == 0 {
        return Err(usage("j-min must be at least 1: j = 0 carries no electromagnetic modes"));
    }
    Ok(SpectrumConfig {
        j_min,
        j_max: args.j_max.or(file.j_max).unwrap_or(10),
        n_max: args.n_max.or(file.n_max).unwrap_or(10),
        rho: positive("rho", args.rho.or(file.rho).unwrap_or(1.0))?,
        c_light: positive("c-light", args.c_light.or(file.c_light).unwrap_or(1.0))?,
    })
}

pub fn resolve_mode(args: &ModeArgs, file: &ModeFile) -> Result<ModeConfig, CliError> {
    let kind = args.kind.or(file.kind).unwrap_or(ModeKind::Magnetic);
    let j = args.j.or(file.j).unwrap_or(1);
    if j == 0 {
        return Err(usage(
            "j = 0 is excluded: both mode families are built from the σ = ±1 harmonics, which vanish at j = 0",
        ));
    }
    let n = args.n.or(file.n).unwrap_or(0);
    let m = args.m.or(file.m).unwrap_or(0);
    let rho = positive("rho", args.rho.or(file.rho).unwrap_or(1.0))?;
    let c_light = positive("c-light", args.c_light.or(file.c_light).unwrap_or(1.0))?;
    let spec = ModeSpec::with_units(kind, j, n, m, rho, c_light)?;
    let grid_points = args.grid_points.or(file.grid_points).unwrap_or(128);
    if grid_points < 16 {
        return Err(usage(format!("grid-points must be at least 16, got {grid_points}")));
    }
    let chi_margin = args.chi_margin.or(file.chi_margin).unwrap_or(0.02);
    if !(chi_margin > 0.0 && chi_margin < 0.5) {
        return Err(usage(format!("chi-margin must lie in (0, 0.5), got {chi_margin}")));
    }
    let theta = args.theta.or(file.theta);
    if let Some(th) = theta {
        if !(th > 0.0 && th < std::f64::consts::PI) {
            return Err(usage(format!("theta must lie in (0, π), got {th}")));
        }
    }
    Ok(ModeConfig {
        kind,
        j,
        n,
        m,
        rho,
        c_light,
        grid_points,
        chi_margin,
        theta,
        phi: finite("phi", args.phi.or(file.phi).unwrap_or(0.0))?,
        t: finite("t", args.t.or(file.t).unwrap_or(0.0))?,
        normalize: args.normalize || file.normalize.unwrap_or(false),
        omega_dimensionless: spec.omega_dimensionless(),
        omega_physical: spec.omega_physical(),
    })
}

pub fn resolve_verify(args: &VerifyArgs, file: &VerifyFile) -> Result<VerifyRunConfig, CliError> {
    let suite = args
        .suite
        .or(file.suite)
        .ok_or_else(|| usage("verify needs --suite (algebra, geometry, angular, radial, gauge or full)"))?;
    let mut settings = VerifyConfig::default();
    for (key, value) in &file.tolerances {
        settings.tolerances.set(key, *value)?;
    }
    for spec in &args.tolerances {
        settings.tolerances.apply_override(spec)?;
    }
    settings.detune = finite("detune", args.detune.or(file.detune).unwrap_or(0.0))?;
    if let Some(seed) = args.seed.or(file.seed) {
        settings.seed = seed;
    }
    Ok(VerifyRunConfig { suite, settings })
}

/// Resolves a parsed command line against an optional config file.
pub fn resolve(cli: &Cli) -> Result<(RunConfig, Format, Option<PathBuf>), CliError> {
    let file = match &cli.config {
        Some(path) => load_file_config(path)?,
        None => FileConfig::default(),
    };
    let format = cli.format.or(file.format).unwrap_or(Format::Csv);
    let out = cli.out.clone().or(file.out.clone());
    let run = match &cli.command {
        Command::Spectrum(a) => RunConfig::Spectrum(resolve_spectrum(a, &file.spectrum)?),
        Command::Mode(a) => RunConfig::Mode(resolve_mode(a, &file.mode)?),
        Command::Verify(a) => RunConfig::Verify(resolve_verify(a, &file.verify)?),
    };
    Ok((run, format, out))
}

/// 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_preamble(kind: &str) -> String {
    format!("# dkp-s3 {kind} schema_version={SCHEMA_VERSION}\n")
}

fn json_document(config: &RunConfig, body_key: &str, body: Value) -> String {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "config": config,
    });
    doc[body_key] = body;
    pretty(&doc)
}

fn pretty(doc: &Value) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    text.push('\n');
    text
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub j: u32,
    pub n: u32,
    pub omega_dimensionless: u32,
    pub omega_physical: f64,
}

pub fn spectrum_rows(cfg: &SpectrumConfig) -> Result<Vec<SpectrumRow>, CliError> {
    let mut rows = Vec::new();
    for j in cfg.j_min..=cfg.j_max {
        for n in 0..=cfg.n_max {
            rows.push(SpectrumRow {
                j,
                n,
                omega_dimensionless: n + 1 + j,
                omega_physical: spectrum(j, n, cfg.rho, cfg.c_light)?,
            });
        }
    }
    Ok(rows)
}

pub fn cmd_spectrum(config: &RunConfig, cfg: &SpectrumConfig, format: Format) -> Result<Output, CliError> {
    let rows = spectrum_rows(cfg)?;
    let text = match format {
        Format::Csv => {
            let mut s = csv_preamble("spectrum");
            s.push_str("j,n,omega_dimensionless,omega_physical\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.j, r.n, r.omega_dimensionless, num(r.omega_physical));
            }
            s
        }
        Format::Json => json_document(config, "rows", serde_json::to_value(&rows).expect("rows serialize")),
    };
    Ok(Output { text, success: true })
}

const POTENTIAL_LABELS: [&str; 4] = ["t", "m1", "0", "p1"];

/// Column names of the `mode` table.
pub fn mode_columns(with_potential: bool) -> Vec<String> {
    let mut cols = vec!["chi".to_string()];
    for k in 1..=10 {
        cols.push(format!("re_f{k}"));
        cols.push(format!("im_f{k}"));
    }
    if with_potential {
        for l in POTENTIAL_LABELS {
            cols.push(format!("re_a_{l}"));
            cols.push(format!("im_a_{l}"));
        }
    }
    cols
}

pub fn mode_table(cfg: &ModeConfig) -> Result<Vec<Vec<f64>>, CliError> {
    let spec = ModeSpec::with_units(cfg.kind, cfg.j, cfg.n, cfg.m, cfg.rho, cfg.c_light)?;
    let grid = interior_grid(cfg.grid_points, cfg.chi_margin);
    let mut solution = build_mode(&spec)?;
    if cfg.normalize {
        solution = solution.normalized(&grid)?;
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &chi in &grid {
        let st = solution.eval(chi)?;
        let mut row = vec![chi];
        push_complex(&mut row, &st.f);
        if let Some(theta) = cfg.theta {
            let p = potential(&spec, &solution, SpacetimePoint::new(cfg.t, chi, theta, cfg.phi))?;
            push_complex(&mut row, &p.cyclic);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn push_complex(row: &mut Vec<f64>, values: &[crate::Complex64]) {
    for v in values {
        row.push(v.re);
        row.push(v.im);
    }
}

pub fn cmd_mode(config: &RunConfig, cfg: &ModeConfig, format: Format) -> Result<Output, CliError> {
    let columns = mode_columns(cfg.theta.is_some());
    let rows = mode_table(cfg)?;
    let text = match format {
        Format::Csv => {
            let mut s = csv_preamble("mode");
            s.push_str(&columns.join(","));
            s.push('\n');
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|&v| num(v)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut doc_rows = Vec::with_capacity(rows.len());
            for row in &rows {
                let obj: serde_json::Map<String, Value> =
                    columns.iter().cloned().zip(row.iter().map(|&v| json!(v))).collect();
                doc_rows.push(Value::Object(obj));
            }
            // JSON objects are unordered, so the column order travels separately
            let mut doc = json!({
                "schema_version": SCHEMA_VERSION,
                "config": config,
                "columns": columns,
            });
            doc["rows"] = Value::Array(doc_rows);
            pretty(&doc)
        }
    };
    Ok(Output { text, success: true })
}

pub fn cmd_verify(config: &RunConfig, cfg: &VerifyRunConfig, format: Format) -> Result<Output, CliError> {
    let report = run_suite(cfg.suite, &cfg.settings)?;
    Ok(Output { text: render_report(config, &report, format), success: report.passed() })
}

pub fn render_report(config: &RunConfig, report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = csv_preamble("verify");
            s.push_str("suite,check,value,comparison,tolerance,status\n");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{},\"{}\",{},{},{},{}",
                    report.suite,
                    c.name.replace('"', "'"),
                    num(c.value),
                    c.comparison.symbol(),
                    num(c.tolerance),
                    if c.passed { "pass" } else { "FAIL" }
                );
            }
            s
        }
        Format::Json => json_document(
            config,
            "report",
            json!({
                "suite": report.suite,
                "passed": report.passed(),
                "checks": report.checks,
            }),
        ),
    }
}

/// Executes a parsed command line and returns the rendered output.
pub fn execute(cli: &Cli) -> Result<(Output, Option<PathBuf>), CliError> {
    let (config, format, out) = resolve(cli)?;
    let output = match &config {
        RunConfig::Spectrum(c) => cmd_spectrum(&config, c, format)?,
        RunConfig::Mode(c) => cmd_mode(&config, c, format)?,
        RunConfig::Verify(c) => cmd_verify(&config, c, format)?,
    };
    Ok((output, out))
}

/// Full process behaviour for the given argument list, including exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (output, out) = match execute(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("dkp-s3: {e}");
            return ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Runtime(_) => 1,
            });
        }
    };
    let written = match &out {
        Some(path) => std::fs::write(path, &output.text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(output.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("dkp-s3: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if output.success {
        ExitCode::SUCCESS
    } else {
        eprintln!("dkp-s3: verification failed");
        ExitCode::from(1)
    }
}

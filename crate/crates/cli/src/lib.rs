//! Command-line front end: parse configuration, dispatch scenario runs and
//! sweeps, emit CSV/JSON artifacts, and run the built-in verification suite.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hamsim_core::record::TrajectoryRecord;
use hamsim_core::scenarios::report::{
    commutation_report_classical, commutation_report_quantum,
};
use hamsim_core::scenarios::run::{run_scenario, with_coupling};
use hamsim_core::scenarios::{
    build_cagi_toy, build_qagi_toy, fit_decoherence_rate, ReadoutMode, ScenarioConfig,
    ScenarioKind,
};
use hamsim_core::SimError;

/// Exit-code categories: configuration 2, numeric 3, input/output 4, failed
/// verification 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
    Io(String),
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::ChecksFailed(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::InvalidConfig(_)
            | SimError::MissingParameter(_)
            | SimError::NonpositiveParameter { .. }
            | SimError::UnknownKind { .. }
            | SimError::SideMismatch { .. }
            | SimError::InvalidProbability(_)
            | SimError::DimensionCapExceeded { .. } => CliError::Config(e.to_string()),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

fn io_err(e: std::io::Error, path: &Path) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Strict-JSON scenario configuration file.
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output directory (created if absent).
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    /// Override the configured random seed.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Concurrency bound for grid points.
    #[arg(long, value_name = "N")]
    pub jobs: Option<usize>,
    /// Trajectory artifact format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario and write traj.csv (or traj.json) plus meta.json.
    Simulate(RunArgs),
    /// Sweep one coupling over a value grid; write per-point trajectories and
    /// a fitted-decoherence summary.csv.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Coupling to sweep (kappa, mu, g, j, lambda, mass).
        #[arg(long, value_name = "NAME", default_value = "kappa")]
        param: String,
        /// Comma-separated grid values.
        #[arg(long, value_name = "V1,V2,...")]
        values: String,
    },
    /// Write the pairwise commutation-magnitude matrix for the configured
    /// scenario as report.csv.
    Report(RunArgs),
    /// Run the verification catalogue and print one pass/fail line per
    /// criterion.
    Verify {
        /// Run a single criterion by its 1-based id.
        #[arg(long, value_name = "N")]
        id: Option<usize>,
    },
}

#[derive(Debug, Parser)]
#[command(name = "hamsim", version, about = "Dual-engine Hamiltonian agent dynamics simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<ScenarioConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(e, path))?;
    let mut cfg = ScenarioConfig::from_json(&text)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(e, dir))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| io_err(e, path))
}

/// Render a record as a JSON object with the same column order as the CSV.
fn record_to_json(record: &TrajectoryRecord) -> Result<String, CliError> {
    let mut obj = serde_json::Map::new();
    obj.insert("t".into(), json!(record.times));
    for (name, series) in &record.series {
        obj.insert(name.clone(), json!(series));
    }
    let mut flags = vec![0u8; record.times.len()];
    for e in &record.events {
        if e.step < flags.len() {
            flags[e.step] = 1;
        }
    }
    obj.insert("event_flag".into(), json!(flags));
    obj.insert("events".into(), json!(record.events));
    serde_json::to_string_pretty(&serde_json::Value::Object(obj))
        .map_err(|e| CliError::Io(e.to_string()))
}

fn write_record(
    record: &TrajectoryRecord,
    dir: &Path,
    stem: &str,
    format: OutputFormat,
) -> Result<PathBuf, CliError> {
    let (name, body) = match format {
        OutputFormat::Csv => (format!("{stem}.csv"), record.to_csv()?),
        OutputFormat::Json => (format!("{stem}.json"), record_to_json(record)?),
    };
    let path = dir.join(name);
    write_text(&path, &body)?;
    Ok(path)
}

fn write_meta(cfg: &ScenarioConfig, dir: &Path) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(cfg).map_err(|e| CliError::Io(e.to_string()))?;
    write_text(&dir.join("meta.json"), &body)
}

fn simulate(args: &RunArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config, args.seed)?;
    ensure_dir(&args.out)?;
    let output = run_scenario(&cfg)?;
    write_record(&output.record, &args.out, "traj", args.format)?;
    write_meta(&cfg, &args.out)
}

fn parse_values(text: &str) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = text
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect();
    let values = values.map_err(|e| CliError::Config(format!("bad sweep value: {e}")))?;
    if values.is_empty() {
        return Err(CliError::Config("empty sweep grid".into()));
    }
    Ok(values)
}

/// Stable file-name fragment for a grid value (`0.25` → `0p25`).
fn value_slug(v: f64) -> String {
    format!("{v}").replace('.', "p").replace('-', "m")
}

fn sweep(args: &RunArgs, param: &str, values_text: &str) -> Result<(), CliError> {
    let base = load_config(&args.config, args.seed)?;
    let values = parse_values(values_text)?;
    ensure_dir(&args.out)?;

    let execute = || -> Result<Vec<(f64, f64, f64, TrajectoryRecord)>, SimError> {
        use rayon::prelude::*;
        values
            .par_iter()
            .map(|&value| {
                let mut cfg = with_coupling(&base, param, value)?;
                // Rate fits need the continuous read-out realization, whose
                // coherence decay is a clean exponential.
                cfg.readout.mode = ReadoutMode::Continuous;
                let out = run_scenario(&cfg)?;
                let mags = out.record.series_named("offdiag_env_abs")?;
                let (rate, r2) = fit_decoherence_rate(&out.record.times, mags)?;
                Ok((value, rate, r2, out.record))
            })
            .collect()
    };
    // Bound grid-point concurrency; the row order follows the input grid, so
    // the merged summary is deterministic regardless of scheduling.
    let rows = match args.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?
            .install(execute),
        None => execute(),
    }?;

    let mut summary = String::from("param,value,rate,r_squared\n");
    for (value, rate, r2, record) in &rows {
        write_record(
            record,
            &args.out,
            &format!("traj_{param}_{}", value_slug(*value)),
            args.format,
        )?;
        summary.push_str(&format!(
            "{param},{},{},{}\n",
            hamsim_core::record::format_float(*value),
            hamsim_core::record::format_float(*rate),
            hamsim_core::record::format_float(*r2),
        ));
    }
    write_text(&args.out.join("summary.csv"), &summary)?;
    write_meta(&base, &args.out)
}

fn report(args: &RunArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config, args.seed)?;
    ensure_dir(&args.out)?;
    let csv = match cfg.scenario {
        ScenarioKind::QagiToy => {
            let toy = build_qagi_toy(&cfg)?;
            commutation_report_quantum(&toy.terms)?.to_csv()
        }
        ScenarioKind::CagiToy => {
            let toy = build_cagi_toy(&cfg)?;
            // Probe deep in the smooth region of every term function.
            let probe = hamsim_core::classical::PhaseSpaceState::new(
                vec![toy.q_e, 1.5],
                vec![0.0, 0.4],
            )?;
            commutation_report_classical(&toy.generator_terms(), &probe, 0.0, 1e-4)?.to_csv()
        }
    };
    write_text(&args.out.join("report.csv"), &csv)
}

fn verify(id: Option<usize>) -> Result<(), CliError> {
    let results = match id {
        Some(id) => vec![hamsim_core::verify::run_check(id).ok_or_else(|| {
            CliError::Config(format!("no verification check with id {id} (valid: 1-11)"))
        })?],
        None => hamsim_core::verify::run_all_checks(),
    };
    let mut failed = 0usize;
    for r in &results {
        println!("{}", r.render());
        if !r.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}

/// Execute one parsed invocation.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Sweep { run, param, values } => sweep(run, param, values),
        Command::Report(args) => report(args),
        Command::Verify { id } => verify(*id),
    }
}

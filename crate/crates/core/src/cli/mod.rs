//! Command-line front end: experiment configs, presets and CSV output.
//!
//! ```text
//! thermaneg sweep        --config exp.toml [--out data.csv] [--jobs K]
//! thermaneg threshold    --config exp.toml [--tol X]
//! thermaneg window       --config exp.toml
//! thermaneg scaling      --config exp.toml
//! thermaneg factor-check --config exp.toml
//! thermaneg reproduce    fig2 [--out fig2.csv]
//! ```
//!
//! Exit codes: 0 success, 1 config error, 2 numerical failure, 3 partial
//! success (some cells or rows failed and are marked in the output).

pub mod config;
pub mod format;
pub mod presets;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use rayon::prelude::*;

use crate::analysis::{self, Model, SweepGrid};
use crate::lattice::{self, ModelSpec};
use crate::partitions::{Family, Partition};
use crate::Error;
use config::{ConfigError, ExperimentConfig};
use format::{fmt_g, CsvBuffer};
use presets::PresetCommand;

pub const SWEEP_HEADER: &str = "model,topology,n,c,h,T,beta,partition_id,partition_mask,area,E_N,E_l,is_ppt";
pub const THRESHOLD_HEADER: &str = "model,topology,n,c,h,partition_id,T_th,bracket_lo,bracket_hi,evals";
pub const WINDOW_HEADER: &str = "model,topology,n,c,h,certificate_id,witness_id,T_low,T_high,swapped,note";
pub const SCALING_HEADER: &str =
    "model,topology,n,c,h,certificate_id,witness_id,T_th_certificate,T_th_witness,gap,max_rel_deviation";
pub const FACTOR_HEADER: &str = "model,topology,n,c,h,temperatures,partitions,residual";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "thermaneg", version, about = "Thermal negativities, PPT thresholds and bound-entanglement windows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Experiment config (TOML).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Built-in preset used instead of a config file.
    #[arg(long, value_name = "NAME", conflicts_with = "config")]
    pub preset: Option<String>,
    /// Output CSV; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, value_name = "K")]
    pub jobs: Option<usize>,
    /// Threshold bisection tolerance.
    #[arg(long, value_name = "X")]
    pub tol: Option<f64>,
    /// Config override, repeatable.
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Negativities over a temperature x partition grid.
    Sweep(CommonArgs),
    /// PPT threshold temperature of every partition.
    Threshold(CommonArgs),
    /// Bound-entanglement window between a certificate and a witness cut.
    Window(CommonArgs),
    /// Threshold gap between two cuts across system sizes.
    Scaling(CommonArgs),
    /// Rank-one residual of the negativity grid.
    FactorCheck(CommonArgs),
    /// Regenerate the data of one figure.
    Reproduce {
        /// One of fig2, fig3, fig4, fig4-inset, fig5, fig6, fig7.
        figure: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// List the built-in presets.
    Presets,
}

/// Failure of a whole command.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidModel(_)
            | Error::InvalidPartition(_)
            | Error::DimensionOverflow { .. }
            | Error::NegativeTemperature(_)
            | Error::InvalidArgument(_) => CliError::Config(e.to_string()),
            Error::NumericalBreakdown(_)
            | Error::NotEntangledAtLow { .. }
            | Error::StillEntangledAtHigh { .. }
            | Error::NoSignChange { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

/// CSV produced by a command, with per-row bookkeeping.
#[derive(Debug, Clone)]
pub struct Output {
    pub csv: CsvBuffer,
    pub failures: usize,
}

impl Output {
    fn new(header: &str) -> Self {
        Self {
            csv: CsvBuffer::with_header(header),
            failures: 0,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match (self.failures, self.csv.rows()) {
            (0, _) => EXIT_OK,
            (f, rows) if f >= rows => EXIT_NUMERICAL,
            _ => EXIT_PARTIAL,
        }
    }
}

fn model_fields(spec: &ModelSpec) -> [String; 5] {
    [
        spec.kind.as_str().to_string(),
        spec.topology.as_str().to_string(),
        spec.n_sites.to_string(),
        fmt_g(spec.coupling),
        fmt_g(spec.effective_field()),
    ]
}

fn build_model(spec: ModelSpec) -> Result<Model, CliError> {
    Ok(Model::build_with_limit(spec, lattice::max_spin_sites())?)
}

fn generate(families: &[Family], spec: &ModelSpec) -> Result<Vec<Partition>, CliError> {
    let mut out = Vec::new();
    for f in families {
        let ps = f
            .generate(spec.n_sites, spec.topology)
            .map_err(|e| CliError::Config(format!("partitions.families: {e}")))?;
        out.extend(ps);
    }
    Ok(out)
}

fn single(family: &Family, spec: &ModelSpec, field: &str) -> Result<Partition, CliError> {
    let mut ps = family
        .generate(spec.n_sites, spec.topology)
        .map_err(|e| CliError::Config(format!("{field}: {e}")))?;
    if ps.len() != 1 {
        return Err(CliError::Config(format!(
            "{field}: family yields {} partitions, a single cut is required",
            ps.len()
        )));
    }
    Ok(ps.remove(0))
}

fn push_sweep_rows(out: &mut Output, grid: &SweepGrid) {
    for r in &grid.rows {
        let (e_n, e_l, ppt) = match &r.outcome {
            Ok(neg) => (fmt_g(neg.e_n), fmt_g(neg.e_l), neg.is_ppt().to_string()),
            Err(e) => {
                warn!("{} T={} {}: {e}", r.model, r.temperature, r.partition_id);
                out.failures += 1;
                ("nan".into(), "nan".into(), "error".into())
            }
        };
        let mut fields = model_fields(&r.model).to_vec();
        fields.extend([
            fmt_g(r.temperature),
            fmt_g(r.beta),
            r.partition_id.clone(),
            r.mask.clone(),
            r.area.to_string(),
            e_n,
            e_l,
            ppt,
        ]);
        out.csv.row(&fields);
    }
}

/// Grid of negativities, rows ordered by (n, T, partition).
pub fn cmd_sweep(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let specs = cfg.models()?;
    let temps = cfg.temperatures()?;
    let families = cfg.families()?;
    let mut out = Output::new(SWEEP_HEADER);
    for spec in specs {
        let partitions = generate(&families, &spec)?;
        if temps.is_empty() {
            continue;
        }
        let model = build_model(spec)?;
        let grid = analysis::sweep(&model, &temps, &partitions)?;
        push_sweep_rows(&mut out, &grid);
    }
    Ok(out)
}

/// One threshold row per (n, partition).
pub fn cmd_threshold(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let specs = cfg.models()?;
    let families = cfg.families()?;
    let opts = cfg.threshold_options()?;
    let jobs = specs
        .iter()
        .map(|spec| Ok((*spec, generate(&families, spec)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let models = specs
        .par_iter()
        .map(|&spec| build_model(spec))
        .collect::<Result<Vec<_>, _>>()?;
    let tasks: Vec<(&Model, &Partition)> = models
        .iter()
        .zip(&jobs)
        .flat_map(|(m, (_, ps))| ps.iter().map(move |p| (m, p)))
        .collect();
    let results: Vec<_> = tasks
        .par_iter()
        .map(|(m, p)| analysis::threshold_temperature(m, p, &opts))
        .collect();
    let mut out = Output::new(THRESHOLD_HEADER);
    for ((model, partition), result) in tasks.iter().zip(results) {
        let mut fields = model_fields(model.spec()).to_vec();
        fields.push(partition.id().to_string());
        match result {
            Ok(r) => fields.extend([
                fmt_g(r.t_th),
                fmt_g(r.bracket.0),
                fmt_g(r.bracket.1),
                r.evaluations.to_string(),
            ]),
            Err(e) => {
                warn!("{} {}: {e}", model.spec(), partition.id());
                out.failures += 1;
                fields.extend(["nan".into(), "nan".into(), "nan".into(), "0".into()]);
            }
        }
        out.csv.row(&fields);
    }
    Ok(out)
}

/// Bound-entanglement window per size.
pub fn cmd_window(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let specs = cfg.models()?;
    let (cert_family, wit_family) = cfg.window_families()?;
    let opts = cfg.threshold_options()?;
    let mut out = Output::new(WINDOW_HEADER);
    for spec in specs {
        let cert = single(&cert_family, &spec, "window.certificate")?;
        let wit = single(&wit_family, &spec, "window.witness")?;
        let model = build_model(spec)?;
        let mut fields = model_fields(&spec).to_vec();
        match analysis::bound_entanglement_window(&model, &cert, &wit, &opts) {
            Ok(w) => {
                let (lo, hi) = w.window.unwrap_or((f64::NAN, f64::NAN));
                fields.extend([
                    w.certificate_id,
                    w.witness_id,
                    fmt_g(lo),
                    fmt_g(hi),
                    w.swapped.to_string(),
                    w.note.unwrap_or_default(),
                ]);
            }
            Err(e) => {
                warn!("{spec}: {e}");
                out.failures += 1;
                fields.extend([
                    cert.id().to_string(),
                    wit.id().to_string(),
                    "nan".into(),
                    "nan".into(),
                    "false".into(),
                    e.to_string(),
                ]);
            }
        }
        out.csv.row(&fields);
    }
    Ok(out)
}

/// Threshold gap table over `model.n_list`.
pub fn cmd_scaling(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let specs = cfg.models()?;
    let (cert, wit) = cfg.window_families()?;
    let opts = cfg.threshold_options()?;
    for spec in &specs {
        single(&cert, spec, "window.certificate")?;
        single(&wit, spec, "window.witness")?;
    }
    let sizes: Vec<usize> = specs.iter().map(|s| s.n_sites).collect();
    let table = analysis::type2_gap_table(specs[0], &sizes, &cert, &wit, &opts)?;
    info!(
        "{} vs {}: max relative deviation of the gap {}",
        table.certificate_id,
        table.witness_id,
        fmt_g(table.max_relative_deviation)
    );
    let mut out = Output::new(SCALING_HEADER);
    for r in &table.rows {
        let mut fields = model_fields(&table.base.with_sites(r.n)).to_vec();
        fields.extend([
            table.certificate_id.clone(),
            table.witness_id.clone(),
            fmt_g(r.t_th_certificate),
            fmt_g(r.t_th_witness),
            fmt_g(r.gap),
            fmt_g(table.max_relative_deviation),
        ]);
        out.csv.row(&fields);
    }
    Ok(out)
}

/// Rank-one residual of the E_N grid per size.
pub fn cmd_factor_check(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let specs = cfg.models()?;
    let temps = cfg.temperatures()?;
    let families = cfg.families()?;
    let mut out = Output::new(FACTOR_HEADER);
    for spec in specs {
        let partitions = generate(&families, &spec)?;
        let model = build_model(spec)?;
        let grid = analysis::sweep(&model, &temps, &partitions)?;
        let residual = analysis::rank1_factorizability(&grid)?;
        let mut fields = model_fields(&spec).to_vec();
        fields.extend([temps.len().to_string(), partitions.len().to_string(), fmt_g(residual)]);
        out.csv.row(&fields);
    }
    Ok(out)
}

/// Runs the preset of one figure.
pub fn cmd_reproduce(figure: &str, overrides: &[String]) -> Result<Output, CliError> {
    let preset = presets::FIGURES
        .contains(&figure)
        .then(|| presets::find(figure))
        .flatten()
        .ok_or_else(|| {
            CliError::Config(format!(
                "unknown figure id {figure:?}, expected one of {}",
                presets::FIGURES.join(", ")
            ))
        })?;
    let cfg = preset.config_with(overrides)?;
    match preset.command {
        PresetCommand::Sweep => cmd_sweep(&cfg),
        PresetCommand::Threshold => cmd_threshold(&cfg),
    }
}

fn load_config(common: &CommonArgs) -> Result<ExperimentConfig, CliError> {
    let overrides = overrides_of(common);
    match (&common.config, &common.preset) {
        (Some(path), _) => Ok(ExperimentConfig::load(path, &overrides)?),
        (None, Some(name)) => {
            let p = presets::find(name).ok_or_else(|| CliError::Config(format!("unknown preset {name:?}")))?;
            Ok(p.config_with(&overrides)?)
        }
        (None, None) => Err(CliError::Config("one of --config or --preset is required".into())),
    }
}

fn write_output(out: &Output, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, out.csv.as_str())
                .map_err(|e| CliError::Config(format!("cannot write {}: {e}", p.display())))?;
            info!("wrote {} rows to {}", out.csv.rows(), p.display());
        }
        None => print!("{}", out.csv.as_str()),
    }
    Ok(())
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = jobs {
        if k == 0 {
            return Err(CliError::Config("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(k);
    }
    builder
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))
}

fn overrides_of(common: &CommonArgs) -> Vec<String> {
    let mut overrides = common.set.clone();
    if let Some(tol) = common.tol {
        overrides.push(format!("run.tol={tol:e}"));
    }
    overrides
}

fn execute(command: Command) -> Result<i32, CliError> {
    type CmdFn = fn(&ExperimentConfig) -> Result<Output, CliError>;
    let (out, path) = match command {
        Command::Presets => {
            for p in presets::PRESETS {
                println!("{:<12} {}", p.id, p.description);
            }
            return Ok(EXIT_OK);
        }
        Command::Reproduce { figure, common } => {
            let overrides = overrides_of(&common);
            let out = thread_pool(common.jobs)?.install(|| cmd_reproduce(&figure, &overrides))?;
            let path = common.out.unwrap_or_else(|| PathBuf::from(format!("{figure}.csv")));
            (out, Some(path))
        }
        command => {
            let (common, f): (CommonArgs, CmdFn) = match command {
                Command::Sweep(c) => (c, cmd_sweep),
                Command::Threshold(c) => (c, cmd_threshold),
                Command::Window(c) => (c, cmd_window),
                Command::Scaling(c) => (c, cmd_scaling),
                Command::FactorCheck(c) => (c, cmd_factor_check),
                Command::Presets | Command::Reproduce { .. } => unreachable!("handled above"),
            };
            let cfg = load_config(&common)?;
            let out = thread_pool(common.jobs.or(cfg.run.jobs))?.install(|| f(&cfg))?;
            (out, common.out.or(cfg.run.out))
        }
    };
    write_output(&out, path.as_deref())?;
    if out.failures > 0 {
        warn!("{} of {} rows failed", out.failures, out.csv.rows());
    }
    Ok(out.exit_code())
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("thermaneg: {e}");
            e.exit_code()
        }
    }
}

/// Entry point of the `thermaneg` binary.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

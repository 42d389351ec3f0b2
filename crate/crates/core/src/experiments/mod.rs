//! Seeded sweeps over the other modules, with reports written as a JSON
//! manifest, a CSV of per-instance records and a JSON summary.
//!
//! Every instance draws from its own seed, derived from the experiment
//! seed and the instance key, and records are assembled in instance order.
//! The records section therefore does not depend on the number of worker
//! threads.

mod config;
mod runners;

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use thiserror::Error;

use crate::adreg::AdregError;
use crate::extremal::ExtremalError;
use crate::ffgeom::GeomError;
use crate::field::FieldError;
use crate::graphs::GraphError;
use crate::limits::Limits;
use crate::rng::SAMPLER_ID;

pub use config::{
    AdregScan, Experiment, ExperimentConfig, ExtremalMethod, ExtremalTable, GraphDistanceSetRun, GraphSpec, IrSweep, PointSource,
    SizeRule, Threshold,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Adreg(#[from] AdregError),
}

impl From<std::io::Error> for ExperimentError {
    fn from(e: std::io::Error) -> Self {
        ExperimentError::Io(e.to_string())
    }
}

/// Header of a report, written as `manifest.json`.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub kind: String,
    pub config: ExperimentConfig,
    pub seed: Option<u64>,
    pub sampler: String,
    pub version: String,
    pub created_unix: u64,
    pub jobs: usize,
    pub records: String,
    pub summary: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub manifest: Manifest,
    /// Per-instance records with a header row; stable column order.
    pub records_csv: String,
    pub summary: serde_json::Value,
    pub pass: bool,
}

impl ExperimentReport {
    /// Writes `manifest.json`, `records.csv` and `summary.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), ExperimentError> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(&self.manifest.records), &self.records_csv)?;
        let summary = serde_json::to_string_pretty(&self.summary).expect("summary serializes");
        std::fs::write(dir.join(&self.manifest.summary), summary + "\n")?;
        let manifest = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
        std::fs::write(dir.join("manifest.json"), manifest + "\n")?;
        Ok(())
    }
}

/// What a runner hands back before the header is attached.
pub(crate) struct Outcome {
    pub records_csv: String,
    pub summary: serde_json::Value,
    pub pass: bool,
}

/// Validates `config` and runs it on a pool of `config.jobs` threads.
pub fn run(config: &ExperimentConfig, limits: &Limits) -> Result<ExperimentReport, ExperimentError> {
    config.validate()?;
    let jobs = config.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))?;
    let seed = config.seed.unwrap_or(0);
    let outcome = pool.install(|| match &config.experiment {
        Experiment::IrSweep(c) => runners::ir_sweep(c, seed, limits),
        Experiment::Threshold(c) => runners::threshold(c, seed, limits),
        Experiment::ExtremalTable(c) => runners::extremal_table(c, limits),
        Experiment::AdregScan(c) => runners::adreg_scan(c, limits),
        Experiment::GraphDistanceSet(c) => runners::distance_set(c, seed, limits),
    })?;
    let created_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let manifest = Manifest {
        kind: config.experiment.kind().to_string(),
        config: config.clone(),
        seed: config.seed,
        sampler: SAMPLER_ID.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        created_unix,
        jobs,
        records: "records.csv".into(),
        summary: "summary.json".into(),
        pass: outcome.pass,
    };
    Ok(ExperimentReport { manifest, records_csv: outcome.records_csv, summary: outcome.summary, pass: outcome.pass })
}

macro_rules! kind_runner {
    ($name:ident, $variant:ident, $ty:ty) => {
        pub fn $name(config: &$ty, seed: Option<u64>, jobs: Option<usize>, limits: &Limits) -> Result<ExperimentReport, ExperimentError> {
            let mut full = ExperimentConfig::new(Experiment::$variant(config.clone()));
            full.seed = seed;
            full.jobs = jobs;
            run(&full, limits)
        }
    };
}

kind_runner!(run_ir_sweep, IrSweep, IrSweep);
kind_runner!(run_threshold, Threshold, Threshold);
kind_runner!(run_extremal_table, ExtremalTable, ExtremalTable);
kind_runner!(run_adreg_scan, AdregScan, AdregScan);
kind_runner!(run_graph_distance_set, GraphDistanceSet, GraphDistanceSetRun);

//! Parameter sweeps over `(n, k)` grids, CSV summaries and scaling fits.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{derive_trial_stream, mix_seed, EngineError, RunOptions, Simulation, StopReason};
use crate::model::{default_max_rounds, Algorithm, ColonyConfig, ConfigError, Quality};
use crate::stats::quantile_sorted;

/// First line of every summary file.
pub const CSV_HEADER_COMMENT: &str = "# househunt-summary v1";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad quality pattern `{0}`")]
    BadPattern(String),
    #[error("bad scaling model `{0}`")]
    BadModel(String),
    #[error("the grid is empty")]
    EmptyGrid,
    #[error("trials must be positive")]
    NoTrials,
    #[error("a fit needs at least 3 rows with converged trials, got {0}")]
    TooFewRows(usize),
    #[error("all rows share the same regressor value")]
    DegenerateRegressor,
}

/// How nest qualities are assigned in each trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QualityPattern {
    /// Nest 1 is good, every other nest is bad.
    OneGood,
    AllGood,
    /// Each nest good independently with probability `p`, redrawn until at
    /// least one is good.
    Random(f64),
}

impl QualityPattern {
    pub fn draw<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> Vec<Quality> {
        match *self {
            QualityPattern::OneGood => (1..=k)
                .map(|i| if i == 1 { Quality::Suitable } else { Quality::Unsuitable })
                .collect(),
            QualityPattern::AllGood => vec![Quality::Suitable; k],
            QualityPattern::Random(p) => loop {
                let q: Vec<Quality> = (0..k)
                    .map(|_| if rng.gen_bool(p) { Quality::Suitable } else { Quality::Unsuitable })
                    .collect();
                if q.iter().any(|q| q.is_good()) {
                    break q;
                }
            },
        }
    }
}

impl FromStr for QualityPattern {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "one-good" => return Ok(QualityPattern::OneGood),
            "all-good" => return Ok(QualityPattern::AllGood),
            _ => {}
        }
        s.strip_prefix("random:")
            .and_then(|p| p.parse::<f64>().ok())
            .filter(|p| *p > 0.0 && *p <= 1.0)
            .map(QualityPattern::Random)
            .ok_or_else(|| HarnessError::BadPattern(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub algorithm: Algorithm,
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    pub pattern: QualityPattern,
    pub trials: u64,
    pub master_seed: u64,
    /// Defaults to `default_max_rounds(n, k)` per cell.
    pub max_rounds: Option<u64>,
}

impl ExperimentSpec {
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.ns
            .iter()
            .flat_map(|&n| self.ks.iter().map(move |&k| (n, k)))
            .collect()
    }

    fn check(&self) -> Result<(), HarnessError> {
        if self.ns.is_empty() || self.ks.is_empty() {
            return Err(HarnessError::EmptyGrid);
        }
        if self.trials == 0 {
            return Err(HarnessError::NoTrials);
        }
        for &(n, k) in &self.cells() {
            if n == 0 {
                return Err(ConfigError::NoAnts.into());
            }
            if k == 0 {
                return Err(ConfigError::NoNests.into());
            }
        }
        if self.max_rounds == Some(0) {
            return Err(ConfigError::ZeroRoundCap.into());
        }
        Ok(())
    }
}

/// Master seed of one grid cell.
pub fn cell_seed(master: u64, n: usize, k: usize) -> u64 {
    mix_seed(mix_seed(master, n as u64), k as u64)
}

/// Aggregate of one grid cell. Round statistics cover converged trials only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: Algorithm,
    pub n: usize,
    pub k: usize,
    pub trials: u64,
    pub converged: u64,
    pub median_rounds: Option<f64>,
    pub mean_rounds: Option<f64>,
    pub p10_rounds: Option<f64>,
    pub p90_rounds: Option<f64>,
    pub min_rounds: Option<u64>,
    pub max_rounds: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub rounds: Option<u64>,
    pub violated: bool,
}

/// Runs trial `trial` of cell `(n, k)`.
pub fn run_trial(spec: &ExperimentSpec, n: usize, k: usize, trial: u64) -> Result<TrialOutcome, HarnessError> {
    let seed = cell_seed(spec.master_seed, n, k);
    let mut rng = derive_trial_stream(seed, trial);
    let qualities = spec.pattern.draw(k, &mut rng);
    let config = ColonyConfig::new(n, qualities, spec.algorithm, seed)
        .with_max_rounds(spec.max_rounds.unwrap_or_else(|| default_max_rounds(n, k)));
    let sim = Simulation::with_rng(config, rng)?;
    let (_, report) = sim.run(RunOptions { no_trace: true, ..RunOptions::default() });
    Ok(TrialOutcome {
        rounds: report.rounds_to_converge,
        violated: report.reason == StopReason::PreconditionViolation,
    })
}

pub fn summarize(algorithm: Algorithm, n: usize, k: usize, outcomes: &[TrialOutcome]) -> SummaryRow {
    let mut rounds: Vec<f64> = outcomes.iter().filter_map(|o| o.rounds.map(|r| r as f64)).collect();
    rounds.sort_by(f64::total_cmp);
    let some = !rounds.is_empty();
    let q = |p: f64| some.then(|| quantile_sorted(&rounds, p));
    SummaryRow {
        algorithm,
        n,
        k,
        trials: outcomes.len() as u64,
        converged: rounds.len() as u64,
        median_rounds: q(0.5),
        mean_rounds: some.then(|| rounds.iter().sum::<f64>() / rounds.len() as f64),
        p10_rounds: q(0.1),
        p90_rounds: q(0.9),
        min_rounds: rounds.first().map(|&r| r as u64),
        max_rounds: rounds.last().map(|&r| r as u64),
    }
}

fn sweep_cell(spec: &ExperimentSpec, n: usize, k: usize) -> Result<SummaryRow, HarnessError> {
    let outcomes = (0..spec.trials)
        .into_par_iter()
        .map(|t| run_trial(spec, n, k, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(spec.algorithm, n, k, &outcomes))
}

/// A cell that failed; the rest of the sweep still runs.
#[derive(Debug)]
pub struct CellError {
    pub n: usize,
    pub k: usize,
    pub error: HarnessError,
}

#[derive(Debug, Default)]
pub struct SweepOutput {
    /// One row per successful cell, in grid order (`n` outer, `k` inner).
    pub rows: Vec<SummaryRow>,
    pub errors: Vec<CellError>,
}

pub fn sweep(spec: &ExperimentSpec) -> Result<SweepOutput, HarnessError> {
    spec.check()?;
    let mut out = SweepOutput::default();
    for (n, k) in spec.cells() {
        match sweep_cell(spec, n, k) {
            Ok(row) => out.rows.push(row),
            Err(error) => out.errors.push(CellError { n, k, error }),
        }
    }
    Ok(out)
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], mut w: W) -> Result<(), HarnessError> {
    writeln!(w, "{CSV_HEADER_COMMENT}")?;
    let mut csv = csv::Writer::from_writer(w);
    for row in rows {
        csv.serialize(row)?;
    }
    csv.flush()?;
    Ok(())
}

/// Like [`sweep`], but each row is written and flushed as soon as its cell
/// finishes, so an interrupted sweep keeps its completed cells. A failed
/// write is recorded against its cell and the sweep continues.
pub fn sweep_to_writer<W: Write>(spec: &ExperimentSpec, mut w: W) -> Result<SweepOutput, HarnessError> {
    spec.check()?;
    writeln!(w, "{CSV_HEADER_COMMENT}")?;
    w.flush()?;
    let mut csv = csv::Writer::from_writer(w);
    let mut out = SweepOutput::default();
    for (n, k) in spec.cells() {
        let row = match sweep_cell(spec, n, k) {
            Ok(row) => row,
            Err(error) => {
                out.errors.push(CellError { n, k, error });
                continue;
            }
        };
        if let Err(e) = csv.serialize(&row) {
            out.errors.push(CellError { n, k, error: e.into() });
        } else if let Err(e) = csv.flush() {
            out.errors.push(CellError { n, k, error: e.into() });
        }
        out.rows.push(row);
    }
    Ok(out)
}

pub fn sweep_to_path(spec: &ExperimentSpec, path: &Path) -> Result<SweepOutput, HarnessError> {
    spec.check()?;
    sweep_to_writer(spec, BufWriter::new(File::create(path)?))
}

pub fn read_summary_csv<R: io::Read>(r: R) -> Result<Vec<SummaryRow>, HarnessError> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
    let rows = reader.deserialize().collect::<Result<Vec<SummaryRow>, _>>()?;
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingModel {
    /// median rounds ~ a log2 n + b
    LogN,
    /// median rounds ~ a k log2 n + b
    KLogN,
}

impl ScalingModel {
    pub fn regressor(self, n: usize, k: usize) -> f64 {
        let log_n = (n as f64).log2();
        match self {
            ScalingModel::LogN => log_n,
            ScalingModel::KLogN => k as f64 * log_n,
        }
    }
}

impl FromStr for ScalingModel {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "log-n" => Ok(ScalingModel::LogN),
            "k-log-n" => Ok(ScalingModel::KLogN),
            other => Err(HarnessError::BadModel(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fit {
    pub coefficient: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Ordinary least squares of median rounds on the model's regressor.
pub fn fit_scaling(rows: &[SummaryRow], model: ScalingModel) -> Result<Fit, HarnessError> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.median_rounds.map(|y| (model.regressor(r.n, r.k), y)))
        .collect();
    if pts.len() < 3 {
        return Err(HarnessError::TooFewRows(pts.len()));
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(HarnessError::DegenerateRegressor);
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let coefficient = sxy / sxx;
    let intercept = my - coefficient * mx;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - (intercept + coefficient * p.0)).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 { 0.0 } else { 1.0 - ss_res / ss_tot };
    Ok(Fit { coefficient, intercept, r_squared, points: pts.len() })
}

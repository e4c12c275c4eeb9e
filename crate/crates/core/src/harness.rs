//! Seeded experiment sweeps: per-trial seed derivation, paired runs of every
//! requested algorithm on a shared graph, and CSV output.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CsbmError, Result};
use crate::info_geometry::critical_threshold;
use crate::model::{
    agreement, exact_recovery, sample_assignment, sample_graph, validate_params, CensoredGraph, CommunityAssignment,
    ModelParams, RawParams,
};
use crate::recovery::{genie, spec1, spec1_with_y, spec2, spec2k};
use crate::spectral::draw_valid_y_pair;

/// Stream used for the assignment and graph of a trial.
pub const SAMPLING_STREAM: u64 = 0;

/// Stream used for drawing encoding parameters.
pub const ENCODING_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Spec1,
    Spec1y,
    Spec2,
    Spec2k,
    Genie,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Spec1 => "spec1",
            Algo::Spec1y => "spec1y",
            Algo::Spec2 => "spec2",
            Algo::Spec2k => "spec2k",
            Algo::Genie => "genie",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = CsbmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spec1" => Ok(Algo::Spec1),
            "spec1y" => Ok(Algo::Spec1y),
            "spec2" => Ok(Algo::Spec2),
            "spec2k" => Ok(Algo::Spec2k),
            "genie" => Ok(Algo::Genie),
            other => Err(CsbmError::InvalidArgument(format!("unknown algorithm '{other}'"))),
        }
    }
}

fn default_n() -> usize {
    1000
}
fn default_t_grid() -> Vec<f64> {
    vec![1.0]
}
fn default_trials() -> usize {
    1
}
fn default_algos() -> Vec<Algo> {
    vec![Algo::Genie]
}
fn default_true() -> bool {
    true
}
fn default_spec1y_values() -> Vec<f64> {
    (1..=10).map(|i| 0.2 * i as f64).collect()
}

/// Sweep configuration, read from JSON. Every field except `params` has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub params: RawParams,
    #[serde(default = "default_n")]
    pub n: usize,
    /// Reveal intensities as multiples of the critical threshold.
    #[serde(default = "default_t_grid")]
    pub t_grid: Vec<f64>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_algos")]
    pub algos: Vec<Algo>,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_true")]
    pub enforce_concentration: bool,
    /// Fixed encodings for the two-matrix methods; drawn per trial when absent.
    #[serde(default)]
    pub y_overrides: Option<(f64, f64)>,
    /// Encodings tried by `spec1y`, one row each.
    #[serde(default = "default_spec1y_values")]
    pub spec1y_values: Vec<f64>,
    /// Record wall-clock runtimes; off by default so output is reproducible byte for byte.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(params: RawParams) -> Self {
        Self {
            params,
            n: default_n(),
            t_grid: default_t_grid(),
            trials: default_trials(),
            algos: default_algos(),
            base_seed: 0,
            enforce_concentration: true,
            y_overrides: None,
            spec1y_values: default_spec1y_values(),
            timing: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CsbmError::InvalidConfig(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Checks field constraints and returns the validated model parameters.
    pub fn validate(&self) -> Result<ModelParams> {
        if self.trials == 0 {
            return Err(CsbmError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.n < 64 {
            return Err(CsbmError::InvalidConfig(format!("n must be at least 64, got {}", self.n)));
        }
        if self.t_grid.is_empty() || self.t_grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(CsbmError::InvalidConfig("t_grid entries must be positive".into()));
        }
        if self.algos.is_empty() {
            return Err(CsbmError::InvalidConfig("algos must not be empty".into()));
        }
        if self.algos.contains(&Algo::Spec1y) && self.spec1y_values.is_empty() {
            return Err(CsbmError::InvalidConfig("spec1y requested without spec1y_values".into()));
        }
        validate_params(&self.params)
    }
}

/// One output row: a single algorithm on a single trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub algo: String,
    pub t_multiplier: f64,
    pub t_absolute: f64,
    pub n: usize,
    pub trial_index: usize,
    pub seed: u64,
    pub exact_success: u8,
    pub misclassified: Option<usize>,
    pub genie_agreement: Option<f64>,
    pub runtime_ms: u64,
    pub y1: Option<f64>,
    pub y2: Option<f64>,
    pub error: String,
}

const SEED_INCREMENT: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finaliser.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-cell seed `mix(base ^ mix(mix(trial + C) ^ t_index * C))` with `C` the
/// golden-ratio increment. For fixed `base` and `t_index` the map is a
/// bijection in `trial`, and for fixed `(trial, t_index)` a bijection in `base`.
pub fn derive_seed(base: u64, trial: u64, t_index: u64) -> u64 {
    let cell = mix64(trial.wrapping_add(SEED_INCREMENT)) ^ t_index.wrapping_mul(SEED_INCREMENT);
    mix64(base ^ mix64(cell))
}

/// RNG for one stream of a trial.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A sampled trial: model at absolute `t`, labels and graph.
#[derive(Debug, Clone)]
pub struct Trial {
    pub params: ModelParams,
    pub sigma0: CommunityAssignment,
    pub graph: CensoredGraph,
}

/// Samples the assignment and graph of a trial from the sampling stream of `seed`.
pub fn sample_trial(params: &ModelParams, n: usize, seed: u64, enforce_concentration: bool) -> Result<Trial> {
    let mut rng = trial_rng(seed, SAMPLING_STREAM);
    let sigma0 = sample_assignment(params, n, &mut rng, enforce_concentration)?;
    let graph = sample_graph(params, &sigma0, &mut rng)?;
    Ok(Trial { params: params.clone(), sigma0, graph })
}

struct Cell {
    t_index: usize,
    trial: usize,
    multiplier: f64,
}

/// Runs every `(t multiplier, trial)` cell and returns rows ordered by
/// `(t_index, trial, algorithm)`. Per-row failures are reported in the
/// `error` column; configuration problems abort the sweep.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let base = config.validate()?;
    let t_c = critical_threshold(&base)?.t_c;
    let cells: Vec<Cell> = config
        .t_grid
        .iter()
        .enumerate()
        .flat_map(|(t_index, &multiplier)| (0..config.trials).map(move |trial| Cell { t_index, trial, multiplier }))
        .collect();
    let rows: Vec<Vec<ResultRow>> = cells.par_iter().map(|cell| run_cell(config, &base, t_c, cell)).collect();
    Ok(rows.into_iter().flatten().collect())
}

fn run_cell(config: &ExperimentConfig, base: &ModelParams, t_c: f64, cell: &Cell) -> Vec<ResultRow> {
    let seed = derive_seed(config.base_seed, cell.trial as u64, cell.t_index as u64);
    let t_absolute = cell.multiplier * t_c;
    let template = ResultRow {
        algo: String::new(),
        t_multiplier: cell.multiplier,
        t_absolute,
        n: config.n,
        trial_index: cell.trial,
        seed,
        exact_success: 0,
        misclassified: None,
        genie_agreement: None,
        runtime_ms: 0,
        y1: None,
        y2: None,
        error: String::new(),
    };
    let jobs: Vec<(Algo, Option<f64>)> = config
        .algos
        .iter()
        .flat_map(|&a| match a {
            Algo::Spec1y => config.spec1y_values.iter().map(|&y| (a, Some(y))).collect::<Vec<_>>(),
            _ => vec![(a, None)],
        })
        .collect();
    let fail = |algo: Algo, y: Option<f64>, kind: &str| ResultRow {
        algo: algo.name().to_string(),
        y1: y,
        error: kind.to_string(),
        ..template.clone()
    };

    let trial = match base.with_t(t_absolute).and_then(|p| sample_trial(&p, config.n, seed, config.enforce_concentration)) {
        Ok(t) => t,
        Err(e) => return jobs.iter().map(|&(a, y)| fail(a, y, e.kind())).collect(),
    };
    let reference = genie(&trial.graph, &trial.params, &trial.sigma0).ok();
    let needs_pair = config.algos.iter().any(|a| matches!(a, Algo::Spec2 | Algo::Spec2k));
    let y_pair = match (config.y_overrides, needs_pair) {
        (Some(p), _) => Some(Ok(p)),
        (None, true) => {
            Some(draw_valid_y_pair(&trial.params, &mut trial_rng(seed, ENCODING_STREAM)).map_err(|e| e.kind()))
        }
        (None, false) => None,
    };

    jobs.iter()
        .map(|&(algo, y)| {
            let start = Instant::now();
            let (estimate, ys) = match algo {
                Algo::Genie => (genie(&trial.graph, &trial.params, &trial.sigma0), (None, None)),
                Algo::Spec1 => (spec1(&trial.graph, &trial.params), (None, None)),
                Algo::Spec1y => {
                    let y = y.expect("spec1y jobs carry y");
                    (spec1_with_y(&trial.graph, &trial.params, y), (Some(y), None))
                }
                Algo::Spec2 | Algo::Spec2k => match y_pair.as_ref().expect("pair drawn for two-matrix methods") {
                    Ok(pair) => {
                        let est = if algo == Algo::Spec2 {
                            spec2(&trial.graph, &trial.params, *pair)
                        } else {
                            spec2k(&trial.graph, &trial.params, *pair)
                        };
                        (est, (Some(pair.0), Some(pair.1)))
                    }
                    Err(kind) => return fail(algo, None, kind),
                },
            };
            let runtime_ms = if config.timing { start.elapsed().as_millis() as u64 } else { 0 };
            let outcome = estimate.and_then(|est| {
                let rec = exact_recovery(&est, &trial.sigma0)?;
                let agree = match &reference {
                    Some(r) => Some(agreement(&est, r)?),
                    None => None,
                };
                Ok((rec, agree))
            });
            match outcome {
                Ok((rec, agree)) => ResultRow {
                    algo: algo.name().to_string(),
                    exact_success: u8::from(rec.exact),
                    misclassified: Some(rec.misclassified),
                    genie_agreement: agree,
                    runtime_ms,
                    y1: ys.0,
                    y2: ys.1,
                    ..template.clone()
                },
                Err(e) => ResultRow { runtime_ms, y2: ys.1, ..fail(algo, ys.0.or(y), e.kind()) },
            }
        })
        .collect()
}

pub fn write_results_to<W: std::io::Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "algo",
            "t_multiplier",
            "t_absolute",
            "n",
            "trial_index",
            "seed",
            "exact_success",
            "misclassified",
            "genie_agreement",
            "runtime_ms",
            "y1",
            "y2",
            "error",
        ])
        .map_err(csv_error)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes rows as CSV with a header line.
pub fn write_results(rows: &[ResultRow], path: impl AsRef<Path>) -> Result<()> {
    write_results_to(rows, std::fs::File::create(path)?)
}

fn csv_error(e: csv::Error) -> CsbmError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CsbmError::Io(io),
        other => CsbmError::InvalidArgument(format!("csv: {other:?}")),
    }
}

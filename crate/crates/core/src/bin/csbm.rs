use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use csbm_core::graph_io::{read_graph, write_graph};
use csbm_core::harness::{run_sweep, sample_trial, trial_rng, write_results, Algo, ExperimentConfig, ENCODING_STREAM};
use csbm_core::info_geometry::{critical_threshold, dr_boundary_sample_from, theta, Plane};
use csbm_core::recovery::{genie, spec1, spec1_with_y, spec2, spec2k};
use csbm_core::spectral::draw_valid_y_pair;
use csbm_core::{CommunityAssignment, CsbmError, ModelParams, Result};

#[derive(Parser)]
#[command(name = "csbm", version, about = "Censored stochastic block model experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Spec1,
    Spec1y,
    Spec2,
    Spec2k,
    Genie,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Spec1 => Algo::Spec1,
            AlgoArg::Spec1y => Algo::Spec1y,
            AlgoArg::Spec2 => Algo::Spec2,
            AlgoArg::Spec2k => Algo::Spec2k,
            AlgoArg::Genie => Algo::Genie,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep and write one CSV row per (t, trial, algorithm).
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the critical threshold report as JSON.
    Threshold {
        #[arg(long)]
        config: PathBuf,
    },
    /// Sample a graph at `t = t_mult * t_c` with `n` from the config.
    Sample {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "t-mult")]
        t_mult: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Trace dissonance-range boundaries of a community pair in the plane
    /// through their tangency point.
    Geometry {
        #[arg(long)]
        config: PathBuf,
        /// 1-based community pair, e.g. `1,2`.
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
        /// Level of the traced ranges; defaults to the pair divergence.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 360)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover communities of a graph file and write 1-based labels.
    Recover {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        graph: PathBuf,
        /// Config providing the model parameters (`t` is taken from the graph file).
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        y1: Option<f64>,
        #[arg(long)]
        y2: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected i,j, got '{s}'"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad community index '{x}'"));
    let (i, j) = (parse(a)?, parse(b)?);
    if i == 0 || j == 0 {
        return Err("community indices are 1-based".into());
    }
    Ok((i - 1, j - 1))
}

fn load_params(path: &Path) -> Result<(ExperimentConfig, ModelParams)> {
    let config = ExperimentConfig::load(path)?;
    let params = config.validate()?;
    Ok((config, params))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn geometry(config: &Path, (i, j): (usize, usize), delta: Option<f64>, resolution: usize, out: &Path) -> Result<()> {
    let (_, params) = load_params(config)?;
    let report = critical_threshold(&params)?;
    let pair = report.pair(i, j).ok_or(CsbmError::CommunityOutOfRange(i.max(j), params.k()))?;
    let delta = delta.unwrap_or(pair.delta_plus);
    let plane = Plane::through_tangency(&params, i, j)?;
    let mut w = create(out)?;
    writeln!(w, "community,ray_index,coord1,coord2")?;
    for c in [i, j] {
        let anchor = if delta > pair.delta_plus { (0.0, 0.0) } else { plane.coords(&theta(&params, c)?) };
        for b in dr_boundary_sample_from(&params, c, delta, &plane, anchor, resolution)? {
            writeln!(w, "{},{},{},{}", c + 1, b.ray_index, b.coord1, b.coord2)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn recover(algo: Algo, graph: &Path, config: &Path, ys: (Option<f64>, Option<f64>), seed: u64, out: &Path) -> Result<()> {
    let file = read_graph(graph)?;
    let (_, base) = load_params(config)?;
    if base.k() != file.k() {
        return Err(CsbmError::DimensionMismatch(format!("graph has k = {}, config has k = {}", file.k(), base.k())));
    }
    let params = base.with_t(file.t)?;
    let pair = || -> Result<(f64, f64)> {
        match ys {
            (Some(a), Some(b)) => Ok((a, b)),
            (None, None) => draw_valid_y_pair(&params, &mut trial_rng(seed, ENCODING_STREAM)),
            _ => Err(CsbmError::InvalidArgument("give both --y1 and --y2 or neither".into())),
        }
    };
    let estimate: CommunityAssignment = match algo {
        Algo::Genie => genie(&file.graph, &params, &file.labels)?,
        Algo::Spec1 => spec1(&file.graph, &params)?,
        Algo::Spec1y => {
            let y = ys.0.ok_or_else(|| CsbmError::InvalidArgument("spec1y needs --y1".into()))?;
            spec1_with_y(&file.graph, &params, y)?
        }
        Algo::Spec2 => spec2(&file.graph, &params, pair()?)?,
        Algo::Spec2k => spec2k(&file.graph, &params, pair()?)?,
    };
    let mut w = create(out)?;
    writeln!(w, "vertex,label")?;
    for (v, l) in estimate.labels().iter().enumerate() {
        writeln!(w, "{},{}", v + 1, l + 1)?;
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep { config, out } => {
            let rows = run_sweep(&ExperimentConfig::load(&config)?)?;
            write_results(&rows, &out)
        }
        Command::Threshold { config } => {
            let (_, params) = load_params(&config)?;
            let report = critical_threshold(&params)?;
            let json = serde_json::to_string_pretty(&report).map_err(|e| CsbmError::InvalidArgument(e.to_string()))?;
            println!("{json}");
            Ok(())
        }
        Command::Sample { config, t_mult, seed, out } => {
            let (config, params) = load_params(&config)?;
            if !(t_mult > 0.0 && t_mult.is_finite()) {
                return Err(CsbmError::InvalidArgument(format!("--t-mult must be positive, got {t_mult}")));
            }
            let params = params.with_t(t_mult * critical_threshold(&params)?.t_c)?;
            let trial = sample_trial(&params, config.n, seed, config.enforce_concentration)?;
            write_graph(&out, &trial.graph, &trial.sigma0, params.t())
        }
        Command::Geometry { config, pair, delta, resolution, out } => geometry(&config, pair, delta, resolution, &out),
        Command::Recover { algo, graph, config, y1, y2, seed, out } => recover(algo.into(), &graph, &config, (y1, y2), seed, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.kind());
            ExitCode::from(e.code().min(255) as u8)
        }
    }
}

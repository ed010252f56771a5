//! Benchmark harness: a JSON config expands to the cross product
//! instances × strategies × pair policies × preprocess flags × seeds, run on
//! a worker pool and reported as CSV rows in config order.
//!
//! ```json
//! {
//!   "instances": [{"kind": "random", "width": 40, "height": 40, "fill": 0.6, "holes": true, "seed": 1},
//!                 {"kind": "file", "path": "maze.json"}],
//!   "particles": 1000,
//!   "strategies": ["ssp", "mste"],
//!   "pairs": ["random", "distant"],
//!   "preprocess": [false],
//!   "seeds": [1, 2, 3],
//!   "thresholds": {"distant_worsening": 0.05}
//! }
//! ```
//!
//! `particles` is a count (a fresh random configuration per seed), `"full"`,
//! or absent (use the instance's own particles). `thresholds` is carried
//! along for reporting only.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::generators::{gen_chimney, gen_dsp_adversarial, gen_random_config, gen_random_polyomino, GenError};
use crate::instance::{parse_instance, Instance, InstanceError};
use crate::sim::Configuration;
use crate::strategies::{gather, PairPolicy, Strategy, StrategyConfig, StrategyError};

pub const CSV_HEADER: &str = "instance,strategy,pair,preprocess,seed,length,ms,gathered";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config: {0}")]
    Config(String),
    #[error("instance {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("instance {path}: {source}")]
    Parse { path: PathBuf, source: InstanceError },
    #[error("generating instance: {0}")]
    Generate(#[from] GenError),
    #[error("run {instance}/{strategy}/{pair}/pre={preprocess}/seed={seed}: {source}")]
    Run { instance: String, strategy: String, pair: String, preprocess: bool, seed: u64, source: StrategyError },
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InstanceSpec {
    File { path: PathBuf },
    Random { width: u32, height: u32, fill: f64, holes: bool, seed: u64 },
    Chimney { h: u32 },
    DspAdversarial { holes: u32, w: u32, h: u32 },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ParticleSpec {
    Count(usize),
    Named(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub instances: Vec<InstanceSpec>,
    #[serde(default)]
    pub particles: Option<ParticleSpec>,
    pub strategies: Vec<String>,
    pub pairs: Vec<String>,
    pub preprocess: Vec<bool>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub limit: Option<usize>,
    #[serde(default)]
    pub thresholds: BTreeMap<String, f64>,
}

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        serde_json::from_str(text).map_err(|e| BenchError::Config(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub strategy: Strategy,
    pub pair: PairPolicy,
    pub preprocess: bool,
    pub seed: u64,
    pub length: usize,
    pub ms: f64,
    pub gathered: bool,
    /// Particle count before the first command and after each command.
    pub trace: Vec<usize>,
}

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.3},{}",
            csv_field(&self.instance),
            self.strategy.name(),
            self.pair.name(),
            self.preprocess,
            self.seed,
            self.length,
            self.ms,
            self.gathered
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn load_instance(spec: &InstanceSpec, base_dir: &Path) -> Result<Instance, BenchError> {
    Ok(match spec {
        InstanceSpec::File { path } => {
            let path = base_dir.join(path);
            let text = std::fs::read_to_string(&path).map_err(|source| BenchError::Read { path: path.clone(), source })?;
            parse_instance(&text).map_err(|source| BenchError::Parse { path, source })?
        }
        InstanceSpec::Random { width, height, fill, holes, seed } => {
            gen_random_polyomino(*width, *height, *fill, *holes, *seed)?
        }
        InstanceSpec::Chimney { h } => gen_chimney(*h)?.0,
        InstanceSpec::DspAdversarial { holes, w, h } => gen_dsp_adversarial(*holes, *w, *h)?.0,
    })
}

/// Worker count from `TILTGATHER_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("TILTGATHER_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

pub fn run_bench(cfg: &BenchConfig, base_dir: &Path, threads: Option<usize>) -> Result<Vec<BenchRow>, BenchError> {
    let strategies = cfg
        .strategies
        .iter()
        .map(|s| Strategy::parse(s).ok_or_else(|| BenchError::Config(format!("unknown strategy {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let pairs = cfg
        .pairs
        .iter()
        .map(|s| PairPolicy::parse(s).ok_or_else(|| BenchError::Config(format!("unknown pair policy {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(ParticleSpec::Named(s)) = &cfg.particles {
        if s != "full" {
            return Err(BenchError::Config(format!("particles must be a count or \"full\", got {s:?}")));
        }
    }
    let instances = cfg.instances.iter().map(|s| load_instance(s, base_dir)).collect::<Result<Vec<_>, _>>()?;
    let mut jobs = Vec::new();
    for inst in &instances {
        for &strategy in &strategies {
            for &pair in &pairs {
                for &preprocess in &cfg.preprocess {
                    for &seed in &cfg.seeds {
                        jobs.push((inst, strategy, pair, preprocess, seed));
                    }
                }
            }
        }
    }
    let run = |&(inst, strategy, pair, preprocess, seed): &(&Instance, Strategy, PairPolicy, bool, u64)| {
        let p = &inst.polyomino;
        let start = match &cfg.particles {
            Some(ParticleSpec::Count(c)) => gen_random_config(p, *c, seed),
            Some(ParticleSpec::Named(_)) => Configuration::full(p),
            None => inst.particles.clone(),
        };
        let sc = StrategyConfig { strategy, pair, preprocess, seed, step_limit: cfg.limit, ..Default::default() };
        let r = gather(p, &start, &sc).map_err(|source| BenchError::Run {
            instance: inst.name.clone(),
            strategy: strategy.name().into(),
            pair: pair.name().into(),
            preprocess,
            seed,
            source,
        })?;
        let mut trace = Vec::with_capacity(r.trace.len() + 1);
        trace.push(start.len());
        trace.extend(r.trace);
        Ok(BenchRow {
            instance: inst.name.clone(),
            strategy,
            pair,
            preprocess,
            seed,
            length: r.length,
            ms: r.wall_time_ms,
            gathered: r.gathered,
            trace,
        })
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| BenchError::Pool(e.to_string()))?;
    pool.install(|| jobs.par_iter().map(run).collect())
}

/// First command index after which the count is below `fraction` of the
/// initial count, as a fraction of the total length. `None` if never.
pub fn collapse_point(trace: &[usize], fraction: f64) -> Option<f64> {
    let initial = *trace.first()? as f64;
    let total = trace.len().saturating_sub(1).max(1) as f64;
    trace.iter().position(|&c| (c as f64) < fraction * initial).map(|i| i as f64 / total)
}

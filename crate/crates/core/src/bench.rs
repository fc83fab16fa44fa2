//! Benchmark harness: every solver on every instance, one record each.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::baselines::{run_baseline, Algorithm, BaselineConfig};
use crate::data::format::read_instance_file;
use crate::data::metrics::{mu_histogram, MuBin};
use crate::data::records::BenchRecord;
use crate::error::{Error, Result};
use crate::evolve::{solve, EvolutionConfig, Schedules};
use crate::knapsack::{dp_optimal, is_feasible, pack_value, KnapsackInstance, Packing};
use crate::optimizer::OptimizerConfig;
use crate::par::{self, Execution};
use crate::rng::{derive_seed, stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Solver {
    Conga,
    Baseline(Algorithm),
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Conga => "conga",
            Solver::Baseline(a) => a.name(),
        }
    }

    fn tag(self) -> u64 {
        match self {
            Solver::Conga => 0,
            Solver::Baseline(a) => 1 + a as u64,
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("conga") {
            Ok(Solver::Conga)
        } else {
            s.parse().map(Solver::Baseline)
        }
    }
}

/// Parses a comma-separated solver list such as `conga,greedy,sa`.
pub fn parse_solvers(list: &str) -> Result<Vec<Solver>> {
    let solvers = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<_>>>()?;
    if solvers.is_empty() {
        return Err(Error::Config("no algorithms selected".into()));
    }
    Ok(solvers)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub solvers: Vec<Solver>,
    pub seed: u64,
    /// Instance-level worker threads; 0 uses the global pool.
    pub workers: usize,
    pub execution: Execution,
    /// Write `time_s = 0` so output is byte-reproducible.
    pub omit_time: bool,
    pub evolution: EvolutionConfig,
    pub optimizer: OptimizerConfig,
    pub schedules: Schedules,
    /// Template for the classical baselines; `algorithm` is overridden.
    pub baseline: BaselineConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            solvers: vec![Solver::Conga],
            seed: 0,
            workers: 0,
            execution: Execution::Parallel,
            omit_time: false,
            evolution: EvolutionConfig::default(),
            optimizer: OptimizerConfig::default(),
            schedules: Schedules::default(),
            baseline: BaselineConfig::new(Algorithm::Greedy),
        }
    }
}

/// Outcome of one solver on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskResult {
    pub solver: Solver,
    pub dataset: String,
    pub value: f64,
    pub packing: Packing,
    /// μ of the winning agent (CONGA only).
    pub best_mu: Option<f64>,
    pub time_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub tasks: Vec<TaskResult>,
}

impl BenchOutcome {
    /// Per-task μ histogram over the CONGA runs.
    pub fn mu_histogram(&self, width: f64) -> Vec<MuBin> {
        let mus: Vec<f64> = self.tasks.iter().filter_map(|t| t.best_mu).collect();
        mu_histogram(&mus, width)
    }
}

/// FNV-1a; stable across platforms and toolchains.
fn name_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Seed for one (instance, solver) pair.
pub fn task_seed(run_seed: u64, dataset: &str, solver: Solver) -> u64 {
    derive_seed(&[run_seed, name_hash(dataset), solver.tag()])
}

/// Known optimum, or one computed by dynamic programming.
pub fn reference_optimum(inst: &KnapsackInstance) -> Option<f64> {
    inst.optimal_value
        .or_else(|| dp_optimal(inst).ok().map(|(v, _)| v))
}

pub fn run_task(inst: &KnapsackInstance, solver: Solver, cfg: &BenchConfig) -> Result<TaskResult> {
    let seed = task_seed(cfg.seed, &inst.name, solver);
    let start = Instant::now();
    let (value, packing, best_mu) = match solver {
        Solver::Conga => {
            let evo = EvolutionConfig {
                seed,
                execution: cfg.execution,
                ..cfg.evolution
            };
            let rep = solve(inst, &evo, &cfg.optimizer, &cfg.schedules)?;
            (rep.best_value, rep.best_packing, Some(rep.best_mu))
        }
        Solver::Baseline(algorithm) => {
            let bcfg = BaselineConfig {
                algorithm,
                ..cfg.baseline
            };
            let (v, x) = run_baseline(inst, &bcfg, &mut stream(seed, 0))?;
            (v, x, None)
        }
    };
    let time_s = if cfg.omit_time {
        0.0
    } else {
        start.elapsed().as_secs_f64()
    };
    Ok(TaskResult {
        solver,
        dataset: inst.name.clone(),
        value,
        packing,
        best_mu,
        time_s,
    })
}

/// Runs every solver on every instance. Records come out in instance order,
/// then solver order, independent of scheduling.
pub fn run_bench(instances: &[KnapsackInstance], cfg: &BenchConfig) -> Result<BenchOutcome> {
    if instances.is_empty() {
        return Err(Error::Config("no instances to benchmark".into()));
    }
    let per_instance: Vec<Result<Vec<TaskResult>>> = par::with_workers(cfg.workers, || {
        par::map(cfg.execution, instances, |_, inst| {
            cfg.solvers
                .iter()
                .map(|&s| run_task(inst, s, cfg))
                .collect()
        })
    });

    let mut records = Vec::new();
    let mut tasks = Vec::new();
    for (inst, results) in instances.iter().zip(per_instance) {
        let results = results?;
        let optimum = reference_optimum(inst).unwrap_or_else(|| {
            // no exact reference available: best value any solver reached
            results.iter().map(|t| t.value).fold(0.0, f64::max)
        });
        for t in &results {
            debug_assert!(is_feasible(inst, &t.packing));
            debug_assert_eq!(t.value, pack_value(inst, &t.packing));
            records.push(BenchRecord::new(
                t.solver.name(),
                inst.name.clone(),
                inst.len(),
                t.value,
                optimum,
                t.time_s,
            ));
        }
        tasks.extend(results);
    }
    Ok(BenchOutcome { records, tasks })
}

/// Loads every regular file in `dir`, sorted by file name.
pub fn load_suite(dir: impl AsRef<Path>) -> Result<Vec<KnapsackInstance>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir.as_ref())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    paths.iter().map(read_instance_file).collect()
}

//! Population search with directed evolution of the μ hyperparameter.
//!
//! Each generation starts a fresh population whose personal μ values are
//! drawn from a range. Agents run independent penalty-gradient updates for a
//! fixed number of epochs, snapshotting the best feasible packing they see.
//! The μ values of the top agents (by best value) define the next
//! generation's range, widened by `frac` on both ends.

use std::time::Instant;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::data::metrics::reaches_optimum;
use crate::error::{Error, Result};
use crate::knapsack::{pack_value, relaxed_gradients_into, KnapsackInstance, Packing};
use crate::optimizer::{conga_step, GammaRule, GradSample, OptimizerConfig, OptimizerState};
use crate::par::{self, Execution};
use crate::relax::{NoiseSchedule, TemperatureSchedule};
use crate::rng::{derive_seed, stream};

/// Stream index reserved for an agent's initialization draws.
const INIT_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Schedules {
    pub tau: TemperatureSchedule,
    pub noise: NoiseSchedule,
}

impl Schedules {
    pub fn validate(&self) -> Result<()> {
        self.tau.validate()?;
        self.noise.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub n_agents: usize,
    pub epochs: usize,
    pub n_generations: usize,
    pub mu_lo: f64,
    pub mu_hi: f64,
    /// Range expansion factor applied between generations.
    pub frac: f64,
    pub top_fraction: f64,
    /// Lower bound on μ after expansion.
    pub mu_floor: f64,
    pub seed: u64,
    /// Stop as soon as a known optimum is reached.
    pub early_exit: bool,
    pub execution: Execution,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self {
            n_agents: 50,
            epochs: 2000,
            n_generations: 2,
            mu_lo: MuPreset::Wide.range().0,
            mu_hi: MuPreset::Wide.range().1,
            frac: 1.25,
            top_fraction: 0.2,
            mu_floor: 0.01,
            seed: 0,
            early_exit: false,
            execution: Execution::Parallel,
        }
    }
}

impl EvolutionConfig {
    pub fn single_agent() -> Self {
        Self {
            n_agents: 1,
            n_generations: 1,
            ..Self::default()
        }
    }

    pub fn with_mu_range(mut self, (lo, hi): (f64, f64)) -> Self {
        self.mu_lo = lo;
        self.mu_hi = hi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_agents < 1 || self.epochs < 1 || self.n_generations < 1 {
            return Err(Error::Config(
                "n_agents, epochs and n_generations must be at least 1".into(),
            ));
        }
        if !(self.mu_lo > 0.0 && self.mu_lo <= self.mu_hi && self.mu_hi.is_finite()) {
            return Err(Error::Config("need 0 < mu_lo <= mu_hi".into()));
        }
        if !(self.frac >= 1.0 && self.frac.is_finite()) {
            return Err(Error::Config("frac must be >= 1".into()));
        }
        if !(self.top_fraction > 0.0 && self.top_fraction <= 1.0) {
            return Err(Error::Config("top_fraction must lie in (0, 1]".into()));
        }
        if !(self.mu_floor > 0.0) {
            return Err(Error::Config("mu_floor must be positive".into()));
        }
        Ok(())
    }
}

/// Initial μ ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MuPreset {
    /// [0.2, 8.0]
    Wide,
    /// [0.2, 0.8]
    Narrow,
}

impl MuPreset {
    pub fn range(self) -> (f64, f64) {
        match self {
            MuPreset::Wide => (0.2, 8.0),
            MuPreset::Narrow => (0.2, 0.8),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub index: usize,
    pub logits: Vec<f64>,
    pub mu: f64,
    pub opt_state: OptimizerState,
    pub best_value: f64,
    /// Always feasible; starts as the empty pack.
    pub best_packing: Packing,
    pub rng_seed: u64,
    sample: GradSample,
    drawn: Packing,
}

impl AgentState {
    fn new(inst: &KnapsackInstance, index: usize, gen_seed: u64, mu_range: (f64, f64)) -> Self {
        let n = inst.len();
        let rng_seed = derive_seed(&[gen_seed, index as u64]);
        let mut rng = stream(rng_seed, INIT_STREAM);
        let logits = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let (lo, hi) = mu_range;
        let mu = if hi > lo {
            rng.random_range(lo..=hi)
        } else {
            lo
        };
        Self {
            index,
            logits,
            mu,
            opt_state: OptimizerState::new(n),
            best_value: 0.0,
            best_packing: Packing::empty(n),
            rng_seed,
            sample: GradSample::default(),
            drawn: Packing::empty(n),
        }
    }

    /// The packing drawn in the most recent epoch.
    pub fn last_drawn(&self) -> &Packing {
        &self.drawn
    }

    fn step(
        &mut self,
        inst: &KnapsackInstance,
        epoch: usize,
        tau: f64,
        s: f64,
        template: &OptimizerConfig,
    ) {
        let mut rng = stream(self.rng_seed, epoch as u64);
        relaxed_gradients_into(
            inst,
            &self.logits,
            tau,
            s,
            true,
            &mut rng,
            &mut self.sample,
            &mut self.drawn,
        );
        let cfg = OptimizerConfig {
            mu: self.mu,
            ..*template
        };
        conga_step(
            &mut self.logits,
            &self.sample,
            &mut self.opt_state,
            &cfg,
            GammaRule::Conga,
        );
        if self.sample.w <= 0.0 && self.sample.v > self.best_value {
            self.best_value = self.sample.v;
            self.best_packing.clone_from(&self.drawn);
        }
    }
}

/// Per-generation seed.
pub fn generation_seed(run_seed: u64, generation: usize) -> u64 {
    derive_seed(&[run_seed, generation as u64])
}

/// Fresh agents with N(0, 1) logits and μ uniform in `mu_range`. Agent `i`
/// depends only on `(gen_seed, i)`, never on the population size.
pub fn init_population(
    inst: &KnapsackInstance,
    cfg: &EvolutionConfig,
    mu_range: (f64, f64),
    gen_seed: u64,
) -> Vec<AgentState> {
    (0..cfg.n_agents)
        .map(|i| AgentState::new(inst, i, gen_seed, mu_range))
        .collect()
}

/// Advances every agent by one epoch. Agents do not interact.
pub fn run_epoch(
    agents: &mut [AgentState],
    inst: &KnapsackInstance,
    epoch: usize,
    schedules: &Schedules,
    template: &OptimizerConfig,
    exec: Execution,
) {
    let tau = schedules.tau.tau_at(epoch);
    let s = schedules.noise.s_at(epoch);
    par::for_each_mut(exec, agents, |_, agent| {
        agent.step(inst, epoch, tau, s, template)
    });
}

/// μ range spanned by the top agents, widened by `frac`.
pub fn select_mu_range(
    agents: &[AgentState],
    top_fraction: f64,
    frac: f64,
    floor: f64,
) -> (f64, f64) {
    assert!(!agents.is_empty(), "selection needs at least one agent");
    let mut order: Vec<usize> = (0..agents.len()).collect();
    // stable: equal values keep index order
    order.sort_by(|&a, &b| agents[b].best_value.total_cmp(&agents[a].best_value));
    let k = ((top_fraction * agents.len() as f64).ceil() as usize).clamp(1, agents.len());
    let (lo, hi) = order[..k]
        .iter()
        .map(|&i| agents[i].mu)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), m| {
            (lo.min(m), hi.max(m))
        });
    ((lo / frac).max(floor), hi * frac)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationSummary {
    pub index: usize,
    pub mu_range: (f64, f64),
    /// Best value found within this generation.
    pub best_value: f64,
    /// Best value over this and all earlier generations.
    pub cumulative_best: f64,
    pub epochs_run: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub best_value: f64,
    pub best_packing: Packing,
    /// μ of the agent that produced the best packing.
    pub best_mu: f64,
    pub generations: Vec<GenerationSummary>,
    pub wall_time_s: f64,
    pub reached_optimum: Option<bool>,
}

/// Runs the full generational search on one instance.
pub fn solve(
    inst: &KnapsackInstance,
    cfg: &EvolutionConfig,
    opt_cfg: &OptimizerConfig,
    schedules: &Schedules,
) -> Result<SolveReport> {
    inst.validate()?;
    cfg.validate()?;
    opt_cfg.validate()?;
    schedules.validate()?;

    let start = Instant::now();
    let n = inst.len();
    let hit = |v: f64| {
        inst.optimal_value
            .is_some_and(|opt| reaches_optimum(v, opt))
    };

    let mut best_value = 0.0;
    let mut best_packing = Packing::empty(n);
    let mut best_mu = f64::NAN;
    let mut generations = Vec::with_capacity(cfg.n_generations);
    let mut mu_range = (cfg.mu_lo, cfg.mu_hi);
    let mut done = false;

    for g in 0..cfg.n_generations {
        let mut agents = init_population(inst, cfg, mu_range, generation_seed(cfg.seed, g));
        if best_mu.is_nan() {
            best_mu = agents[0].mu;
        }
        let mut epochs_run = 0;
        for epoch in 0..cfg.epochs {
            run_epoch(&mut agents, inst, epoch, schedules, opt_cfg, cfg.execution);
            epochs_run += 1;
            if cfg.early_exit && agents.iter().any(|a| hit(a.best_value)) {
                done = true;
                break;
            }
        }

        // first agent with the highest value wins ties
        let leader = agents.iter().fold(&agents[0], |acc, a| {
            if a.best_value > acc.best_value {
                a
            } else {
                acc
            }
        });
        if leader.best_value > best_value {
            best_value = leader.best_value;
            best_packing = leader.best_packing.clone();
            best_mu = leader.mu;
        }
        generations.push(GenerationSummary {
            index: g,
            mu_range,
            best_value: leader.best_value,
            cumulative_best: best_value,
            epochs_run,
        });
        if done {
            break;
        }
        mu_range = select_mu_range(&agents, cfg.top_fraction, cfg.frac, cfg.mu_floor);
    }

    debug_assert_eq!(best_value, pack_value(inst, &best_packing));
    Ok(SolveReport {
        best_value,
        best_packing,
        best_mu,
        generations,
        wall_time_s: start.elapsed().as_secs_f64(),
        reached_optimum: inst
            .optimal_value
            .map(|opt| reaches_optimum(best_value, opt)),
    })
}

//! Classical knapsack heuristics and an exact branch and bound, used as
//! comparison points.
//!
//! Every routine returns a feasible packing together with its value.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knapsack::{pack_value, KnapsackInstance, Packing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Greedy,
    Sa,
    Ga,
    Bb,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Self::Greedy, Self::Sa, Self::Ga, Self::Bb];

    pub fn name(self) -> &'static str {
        match self {
            Self::Greedy => "greedy",
            Self::Sa => "sa",
            Self::Ga => "ga",
            Self::Bb => "bb",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown baseline {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaConfig {
    /// Defaults to `50 · n`.
    pub iterations: Option<usize>,
    /// Defaults to the largest item value.
    pub initial_temperature: Option<f64>,
    pub cooling: f64,
}

impl Default for SaConfig {
    fn default() -> Self {
        Self {
            iterations: None,
            initial_temperature: None,
            cooling: 0.999,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaInit {
    /// Each bit on with probability 1/2, then repaired.
    #[default]
    Random,
    Zeros,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    /// Per-bit flip probability; defaults to `1/n`.
    pub mutation_rate: Option<f64>,
    pub tournament: usize,
    pub init: GaInit,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 100,
            generations: 500,
            crossover_rate: 0.9,
            mutation_rate: None,
            tournament: 2,
            init: GaInit::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BbConfig {
    /// Maximum number of search nodes; `None` means unlimited.
    pub node_budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    pub algorithm: Algorithm,
    pub time_limit_s: Option<f64>,
    pub sa: SaConfig,
    pub ga: GaConfig,
    pub bb: BbConfig,
}

impl BaselineConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            time_limit_s: None,
            sa: SaConfig::default(),
            ga: GaConfig::default(),
            bb: BbConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.into()));
        if let Some(t) = self.time_limit_s {
            if !(t > 0.0) {
                return bad("time limit must be positive");
            }
        }
        if !(self.sa.cooling > 0.0 && self.sa.cooling <= 1.0) {
            return bad("SA cooling must lie in (0, 1]");
        }
        if matches!(self.sa.initial_temperature, Some(t) if !(t > 0.0)) {
            return bad("SA temperature must be positive");
        }
        if self.ga.population == 0 || self.ga.tournament == 0 {
            return bad("GA population and tournament size must be positive");
        }
        if !(0.0..=1.0).contains(&self.ga.crossover_rate)
            || matches!(self.ga.mutation_rate, Some(m) if !(0.0..=1.0).contains(&m))
        {
            return bad("GA rates must lie in [0, 1]");
        }
        if self.bb.node_budget == Some(0) {
            return bad("node budget must be positive");
        }
        Ok(())
    }

    fn deadline(&self) -> Option<Instant> {
        self.time_limit_s
            .map(|t| Instant::now() + Duration::from_secs_f64(t))
    }
}

/// Dispatches to the configured baseline.
pub fn run_baseline<R: Rng + ?Sized>(
    inst: &KnapsackInstance,
    cfg: &BaselineConfig,
    rng: &mut R,
) -> Result<(f64, Packing)> {
    cfg.validate()?;
    Ok(match cfg.algorithm {
        Algorithm::Greedy => greedy_ratio(inst),
        Algorithm::Sa => simulated_annealing(inst, cfg, rng),
        Algorithm::Ga => genetic_algorithm(inst, cfg, rng),
        Algorithm::Bb => {
            let out = branch_and_bound(inst, cfg);
            (out.value, out.packing)
        }
    })
}

/// Item indices by value density, best first; ties keep index order.
pub fn ratio_order(inst: &KnapsackInstance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = inst.values[a] / inst.weights[a];
        let rb = inst.values[b] / inst.weights[b];
        rb.total_cmp(&ra)
    });
    order
}

/// Density greedy: take items in ratio order whenever they still fit.
pub fn greedy_ratio(inst: &KnapsackInstance) -> (f64, Packing) {
    let mut packing = Packing::empty(inst.len());
    let mut load = 0.0;
    for i in ratio_order(inst) {
        if load + inst.weights[i] <= inst.capacity {
            load += inst.weights[i];
            packing.bits[i] = 1;
        }
    }
    (pack_value(inst, &packing), packing)
}

/// Single-bit-flip annealing started from the greedy packing. Infeasible
/// moves are rejected outright.
pub fn simulated_annealing<R: Rng + ?Sized>(
    inst: &KnapsackInstance,
    cfg: &BaselineConfig,
    rng: &mut R,
) -> (f64, Packing) {
    let n = inst.len();
    let (mut value, mut current) = greedy_ratio(inst);
    let mut load: f64 = current.selected().map(|i| inst.weights[i]).sum();
    let mut best = (value, current.clone());

    let iterations = cfg.sa.iterations.unwrap_or(50 * n);
    let mut temp = cfg
        .sa
        .initial_temperature
        .unwrap_or_else(|| inst.values.iter().copied().fold(0.0, f64::max));
    let deadline = cfg.deadline();

    for it in 0..iterations {
        if it % 1024 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let i = rng.random_range(0..n);
        let adding = current.bits[i] == 0;
        let (dv, dw) = if adding {
            (inst.values[i], inst.weights[i])
        } else {
            (-inst.values[i], -inst.weights[i])
        };
        if load + dw <= inst.capacity {
            let accept = dv >= 0.0 || (temp > 0.0 && rng.random::<f64>() < (dv / temp).exp());
            if accept {
                current.bits[i] ^= 1;
                value += dv;
                load += dw;
                if value > best.0 {
                    best = (value, current.clone());
                }
            }
        }
        temp *= cfg.sa.cooling;
    }
    // re-evaluate to drop accumulated rounding
    (pack_value(inst, &best.1), best.1)
}

/// Drops the lowest-density selected items until the packing fits.
fn repair(inst: &KnapsackInstance, order: &[usize], x: &mut Packing) {
    let mut load: f64 = x.selected().map(|i| inst.weights[i]).sum();
    for &i in order.iter().rev() {
        if load <= inst.capacity {
            break;
        }
        if x.bits[i] == 1 {
            x.bits[i] = 0;
            load -= inst.weights[i];
        }
    }
}

/// Bit-string GA: tournament selection, single-point crossover, per-bit
/// mutation, density repair and one elite.
pub fn genetic_algorithm<R: Rng + ?Sized>(
    inst: &KnapsackInstance,
    cfg: &BaselineConfig,
    rng: &mut R,
) -> (f64, Packing) {
    let n = inst.len();
    let ga = &cfg.ga;
    let order = ratio_order(inst);
    let mutation = ga.mutation_rate.unwrap_or(1.0 / n as f64);
    let deadline = cfg.deadline();

    let mut pop: Vec<(f64, Packing)> = (0..ga.population)
        .map(|_| {
            let mut x = match ga.init {
                GaInit::Random => {
                    Packing::from_bits((0..n).map(|_| rng.random_range(0..=1u8)).collect())
                }
                GaInit::Zeros => Packing::empty(n),
            };
            repair(inst, &order, &mut x);
            (pack_value(inst, &x), x)
        })
        .collect();

    let fittest = |pop: &[(f64, Packing)]| {
        pop.iter()
            .fold(&pop[0], |acc, c| if c.0 > acc.0 { c } else { acc })
            .clone()
    };
    let mut best = fittest(&pop);

    for _ in 0..ga.generations {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let tournament = |rng: &mut R, pop: &[(f64, Packing)]| -> usize {
            let mut pick = rng.random_range(0..pop.len());
            for _ in 1..ga.tournament {
                let c = rng.random_range(0..pop.len());
                if pop[c].0 > pop[pick].0 {
                    pick = c;
                }
            }
            pick
        };
        let mut next = Vec::with_capacity(ga.population);
        next.push(fittest(&pop));
        while next.len() < ga.population {
            let a = tournament(rng, &pop);
            let b = tournament(rng, &pop);
            let mut child = pop[a].1.clone();
            if n > 1 && rng.random::<f64>() < ga.crossover_rate {
                let cut = rng.random_range(1..n);
                child.bits[cut..].copy_from_slice(&pop[b].1.bits[cut..]);
            }
            if mutation > 0.0 {
                for bit in child.bits.iter_mut() {
                    if rng.random::<f64>() < mutation {
                        *bit ^= 1;
                    }
                }
            }
            repair(inst, &order, &mut child);
            next.push((pack_value(inst, &child), child));
        }
        pop = next;
        let gen_best = fittest(&pop);
        if gen_best.0 > best.0 {
            best = gen_best;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct BbOutcome {
    pub value: f64,
    pub packing: Packing,
    /// True when the search finished within its node and time budgets.
    pub proven_optimal: bool,
    pub nodes: u64,
}

/// Depth-first branch and bound over density-sorted items with the
/// fractional-knapsack upper bound. The greedy packing seeds the incumbent.
pub fn branch_and_bound(inst: &KnapsackInstance, cfg: &BaselineConfig) -> BbOutcome {
    let n = inst.len();
    let order = ratio_order(inst);
    let vals: Vec<f64> = order.iter().map(|&i| inst.values[i]).collect();
    let wts: Vec<f64> = order.iter().map(|&i| inst.weights[i]).collect();
    let cap = inst.capacity;

    let bound = |level: usize, value: f64, load: f64| -> f64 {
        let mut room = cap - load;
        let mut b = value;
        for k in level..n {
            if wts[k] <= room {
                room -= wts[k];
                b += vals[k];
            } else {
                b += vals[k] * room / wts[k];
                break;
            }
        }
        b
    };

    let (mut best_value, greedy) = greedy_ratio(inst);
    let mut best_sorted: Vec<u8> = order.iter().map(|&i| greedy.bits[i]).collect();
    let slack = |v: f64| 1e-9 * v.abs().max(1.0);

    // (level, value, load, bit chosen for item level-1)
    let mut stack: Vec<(usize, f64, f64, u8)> = vec![(0, 0.0, 0.0, 0)];
    let mut path: Vec<u8> = Vec::with_capacity(n);
    let mut nodes = 0u64;
    let mut proven = true;
    let deadline = cfg.deadline();

    while let Some((level, value, load, bit)) = stack.pop() {
        if cfg.bb.node_budget.is_some_and(|b| nodes >= b)
            || (nodes.is_multiple_of(4096) && deadline.is_some_and(|d| Instant::now() >= d))
        {
            proven = false;
            break;
        }
        nodes += 1;
        if level > 0 {
            path.truncate(level - 1);
            path.push(bit);
        }
        if value > best_value {
            best_value = value;
            best_sorted.fill(0);
            best_sorted[..level].copy_from_slice(&path[..level]);
        }
        if level == n || bound(level, value, load) <= best_value + slack(best_value) {
            continue;
        }
        stack.push((level + 1, value, load, 0));
        if load + wts[level] <= cap {
            stack.push((level + 1, value + vals[level], load + wts[level], 1));
        }
    }

    let mut packing = Packing::empty(n);
    for (k, &i) in order.iter().enumerate() {
        packing.bits[i] = best_sorted[k];
    }
    BbOutcome {
        value: pack_value(inst, &packing),
        packing,
        proven_optimal: proven,
        nodes,
    }
}

//! Gradient search over binary decision vectors with an adaptive penalty
//! weight and a population of agents, applied to the 0-1 knapsack problem.
//!
//! Module map:
//!
//! - [`relax`]: straight-through hot sigmoid, logistic noise, temperature schedules
//! - [`optimizer`]: penalty loss, adaptive γ (CONGA and AGA), EMA smoothing, the update step
//! - [`knapsack`]: instances, evaluation, relaxed gradients, exact oracles
//! - [`evolve`]: agent populations and μ-range evolution
//! - [`baselines`]: greedy, simulated annealing, genetic algorithm, branch and bound
//! - [`data`]: instance files, generators, result records, metrics
//! - [`toy2d`]: continuous 2-D diagnostics
//! - [`bench`]: run solvers over instance suites

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod bench;
pub mod data;
pub mod error;
pub mod evolve;
pub mod knapsack;
pub mod optimizer;
pub mod par;
pub mod relax;
pub mod rng;
pub mod toy2d;

pub use error::{Error, Result};
pub use evolve::{solve, EvolutionConfig, MuPreset, Schedules, SolveReport};
pub use knapsack::{KnapsackInstance, Packing};
pub use optimizer::{GammaRule, OptimizerConfig};
pub use par::Execution;

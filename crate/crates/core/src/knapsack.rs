//! 0-1 knapsack: instances, evaluation, relaxed gradients and exact oracles.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::GradSample;
use crate::relax::hot_sigmoid;

/// Largest instance the exhaustive oracle accepts.
pub const BRUTE_FORCE_MAX_ITEMS: usize = 25;

/// Default cell budget for [`dp_optimal`].
pub const DP_CELL_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnapsackInstance {
    pub name: String,
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
    pub capacity: f64,
    /// Known optimum, when available.
    pub optimal_value: Option<f64>,
}

impl KnapsackInstance {
    pub fn new(
        name: impl Into<String>,
        values: Vec<f64>,
        weights: Vec<f64>,
        capacity: f64,
    ) -> Result<Self> {
        let inst = Self {
            name: name.into(),
            values,
            weights,
            capacity,
            optimal_value: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_optimum(mut self, opt: f64) -> Self {
        self.optimal_value = Some(opt);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        if self.values.is_empty() {
            return bad("instance has no items".into());
        }
        if self.values.len() != self.weights.len() {
            return bad(format!(
                "{} values but {} weights",
                self.values.len(),
                self.weights.len()
            ));
        }
        if let Some(i) = self
            .values
            .iter()
            .position(|v| !(v.is_finite() && *v > 0.0))
        {
            return bad(format!("item {i}: value must be positive"));
        }
        if let Some(i) = self
            .weights
            .iter()
            .position(|w| !(w.is_finite() && *w > 0.0))
        {
            return bad(format!("item {i}: weight must be positive"));
        }
        if !(self.capacity.is_finite() && self.capacity >= 0.0) {
            return bad("capacity must be non-negative".into());
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// A 0/1 packing vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Packing {
    pub bits: Vec<u8>,
}

impl Packing {
    pub fn empty(n: usize) -> Self {
        Self { bits: vec![0; n] }
    }

    pub fn from_bits(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i)
    }

    /// Compact "0110…" rendering.
    pub fn to_bitstring(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect()
    }
}

pub fn pack_value(inst: &KnapsackInstance, x: &Packing) -> f64 {
    debug_assert_eq!(inst.len(), x.len());
    x.selected().map(|i| inst.values[i]).sum()
}

/// Total packed weight minus capacity; the packing is feasible iff this is `<= 0`.
pub fn pack_overweight(inst: &KnapsackInstance, x: &Packing) -> f64 {
    debug_assert_eq!(inst.len(), x.len());
    x.selected().map(|i| inst.weights[i]).sum::<f64>() - inst.capacity
}

pub fn is_feasible(inst: &KnapsackInstance, x: &Packing) -> bool {
    x.len() == inst.len() && pack_overweight(inst, x) <= 0.0
}

/// Draws a hard packing from the logits and returns the straight-through
/// gradients of `v` and `w` with respect to the logits.
///
/// Both objective and constraint are linear in `x`, so `∂v/∂t_i = values_i ·
/// ∂x_i/∂t_i` exactly.
pub fn relaxed_gradients<R: Rng + ?Sized>(
    inst: &KnapsackInstance,
    logits: &[f64],
    tau: f64,
    s: f64,
    rand: bool,
    rng: &mut R,
) -> (GradSample, Packing) {
    let mut sample = GradSample::default();
    let mut packing = Packing::empty(inst.len());
    relaxed_gradients_into(inst, logits, tau, s, rand, rng, &mut sample, &mut packing);
    (sample, packing)
}

/// Buffer-reusing form of [`relaxed_gradients`].
#[allow(clippy::too_many_arguments)]
pub fn relaxed_gradients_into<R: Rng + ?Sized>(
    inst: &KnapsackInstance,
    logits: &[f64],
    tau: f64,
    s: f64,
    rand: bool,
    rng: &mut R,
    sample: &mut GradSample,
    packing: &mut Packing,
) {
    let n = inst.len();
    debug_assert_eq!(logits.len(), n);
    sample.grad_v.resize(n, 0.0);
    sample.grad_w.resize(n, 0.0);
    packing.bits.resize(n, 0);
    let mut v = 0.0;
    let mut wsum = 0.0;
    for (i, &t) in logits.iter().enumerate() {
        let out = hot_sigmoid(t, tau, s, true, rand, rng);
        let bit = out.x == 1.0;
        packing.bits[i] = u8::from(bit);
        if bit {
            v += inst.values[i];
            wsum += inst.weights[i];
        }
        sample.grad_v[i] = inst.values[i] * out.dxdt;
        sample.grad_w[i] = inst.weights[i] * out.dxdt;
    }
    sample.v = v;
    sample.w = wsum - inst.capacity;
}

/// Exhaustive search. Ties go to the lexicographically smallest bit vector.
pub fn brute_force_optimal(inst: &KnapsackInstance) -> Result<(f64, Packing)> {
    let n = inst.len();
    if n > BRUTE_FORCE_MAX_ITEMS {
        return Err(Error::TooManyItems {
            n,
            max: BRUTE_FORCE_MAX_ITEMS,
        });
    }
    // Bit (n-1-i) of the mask holds x_i, so increasing masks walk the bit
    // vectors in lexicographic order and the first maximum wins.
    let mut best_mask = 0u32;
    let mut best_value = 0.0;
    for mask in 0u32..(1u32 << n) {
        let mut v = 0.0;
        let mut w = 0.0;
        for i in 0..n {
            if mask >> (n - 1 - i) & 1 == 1 {
                v += inst.values[i];
                w += inst.weights[i];
            }
        }
        if w <= inst.capacity && v > best_value {
            best_value = v;
            best_mask = mask;
        }
    }
    let bits = (0..n)
        .map(|i| (best_mask >> (n - 1 - i) & 1) as u8)
        .collect();
    Ok((best_value, Packing::from_bits(bits)))
}

fn as_integral(x: f64, what: &str) -> Result<u64> {
    if x.fract() != 0.0 || x < 0.0 || x > u64::MAX as f64 {
        return Err(Error::NonIntegral(format!("{what} = {x}")));
    }
    Ok(x as u64)
}

/// Exact optimum via the O(n·C) table, with the default cell budget.
pub fn dp_optimal(inst: &KnapsackInstance) -> Result<(f64, Packing)> {
    dp_optimal_with_budget(inst, DP_CELL_BUDGET)
}

pub fn dp_optimal_with_budget(inst: &KnapsackInstance, budget: u128) -> Result<(f64, Packing)> {
    let n = inst.len();
    let cap = as_integral(inst.capacity, "capacity")? as usize;
    let weights = inst
        .weights
        .iter()
        .enumerate()
        .map(|(i, &w)| as_integral(w, &format!("weight[{i}]")).map(|w| w as usize))
        .collect::<Result<Vec<_>>>()?;
    let cells = n as u128 * (cap as u128 + 1);
    if cells > budget {
        return Err(Error::CellBudget { cells, budget });
    }

    let width = cap + 1;
    let words = width.div_ceil(64);
    let mut take = vec![0u64; n * words];
    let mut best = vec![0.0f64; width];
    for (i, &wi) in weights.iter().enumerate() {
        if wi > cap {
            continue;
        }
        let vi = inst.values[i];
        let row = &mut take[i * words..(i + 1) * words];
        for c in (wi..=cap).rev() {
            let cand = best[c - wi] + vi;
            if cand > best[c] {
                best[c] = cand;
                row[c / 64] |= 1 << (c % 64);
            }
        }
    }

    let mut bits = vec![0u8; n];
    let mut c = cap;
    for i in (0..n).rev() {
        if take[i * words + c / 64] >> (c % 64) & 1 == 1 {
            bits[i] = 1;
            c -= weights[i];
        }
    }
    let packing = Packing::from_bits(bits);
    Ok((pack_value(inst, &packing), packing))
}

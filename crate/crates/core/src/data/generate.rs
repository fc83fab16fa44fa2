//! Random instances by value/weight correlation class.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knapsack::KnapsackInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CorrelationClass {
    #[serde(rename = "LD-UC")]
    LdUc,
    #[serde(rename = "HD-UC")]
    HdUc,
    #[serde(rename = "HD-WC")]
    HdWc,
    #[serde(rename = "HD-SC")]
    HdSc,
}

impl CorrelationClass {
    pub const ALL: [CorrelationClass; 4] = [Self::LdUc, Self::HdUc, Self::HdWc, Self::HdSc];

    pub fn label(self) -> &'static str {
        match self {
            Self::LdUc => "LD-UC",
            Self::HdUc => "HD-UC",
            Self::HdWc => "HD-WC",
            Self::HdSc => "HD-SC",
        }
    }

    /// Allowed item counts.
    pub fn size_range(self) -> (usize, usize) {
        match self {
            Self::LdUc => (4, 20),
            _ => (100, 10_000),
        }
    }

    /// 1 = uncorrelated, 2 = weakly, 3 = strongly correlated.
    pub fn kind(self) -> u8 {
        match self {
            Self::LdUc | Self::HdUc => 1,
            Self::HdWc => 2,
            Self::HdSc => 3,
        }
    }
}

impl fmt::Display for CorrelationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CorrelationClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown class {s:?} (expected LD-UC, HD-UC, HD-WC or HD-SC)"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub name: String,
    pub class: CorrelationClass,
    pub n_items: usize,
    /// Coefficient range R: weights are drawn from [1, R].
    pub range: u32,
    pub capacity_ratio: f64,
    pub seed: u64,
}

impl DatasetSpec {
    /// Spec with the default range (1000) and capacity ratio (0.75). The name
    /// follows `knapPI_<kind>_<n>_<R>_<seed>`.
    pub fn new(class: CorrelationClass, n_items: usize, seed: u64) -> Self {
        let range = 1000;
        Self {
            name: format!("knapPI_{}_{}_{}_{}", class.kind(), n_items, range, seed),
            class,
            n_items,
            range,
            capacity_ratio: 0.75,
            seed,
        }
    }

    /// Same spec with coefficient range `range`; the name follows.
    pub fn with_range(mut self, range: u32) -> Self {
        self.range = range;
        self.name = format!(
            "knapPI_{}_{}_{}_{}",
            self.class.kind(),
            self.n_items,
            range,
            self.seed
        );
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.class.size_range();
        if !(lo..=hi).contains(&self.n_items) {
            return Err(Error::Config(format!(
                "{} instances need {lo}..={hi} items, got {}",
                self.class, self.n_items
            )));
        }
        if self.range < 10 {
            return Err(Error::Config(
                "coefficient range must be at least 10".into(),
            ));
        }
        if !(self.capacity_ratio > 0.0 && self.capacity_ratio < 1.0) {
            return Err(Error::Config("capacity ratio must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// Draws an instance. Weights are uniform on `[1, R]`; values are uniform
/// (UC), `w ± R/10` clamped at 1 (WC) or `w + R/10` (SC). Capacity is
/// `round(ratio · Σw)`.
pub fn generate_instance<R: Rng + ?Sized>(
    spec: &DatasetSpec,
    rng: &mut R,
) -> Result<KnapsackInstance> {
    spec.validate()?;
    let r = i64::from(spec.range);
    let spread = r / 10;
    let mut values = Vec::with_capacity(spec.n_items);
    let mut weights = Vec::with_capacity(spec.n_items);
    for _ in 0..spec.n_items {
        let w = rng.random_range(1..=r);
        let v = match spec.class.kind() {
            1 => rng.random_range(1..=r),
            2 => (w + rng.random_range(-spread..=spread)).max(1),
            _ => w + spread,
        };
        weights.push(w as f64);
        values.push(v as f64);
    }
    let capacity = (spec.capacity_ratio * weights.iter().sum::<f64>()).round();
    KnapsackInstance::new(spec.name.clone(), values, weights, capacity)
}

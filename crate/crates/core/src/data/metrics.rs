use serde::{Deserialize, Serialize};

use crate::data::records::BenchRecord;
use crate::error::{Error, Result};

/// Relative tolerance for "reached the optimum".
pub const OPTIMUM_RTOL: f64 = 1e-6;

/// `|opt − value| <= 1e-6 · max(1, opt)`.
pub fn reaches_optimum(value: f64, opt: f64) -> bool {
    (opt - value).abs() <= OPTIMUM_RTOL * opt.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    /// Fraction of tasks solved to optimality.
    pub acc: f64,
    pub mean_time_s: f64,
}

pub fn compute_metrics(records: &[BenchRecord]) -> Result<Metrics> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let n = records.len() as f64;
    let solved = records
        .iter()
        .filter(|r| r.shortfall.abs() <= OPTIMUM_RTOL * r.optimal_value.abs().max(1.0))
        .count();
    Ok(Metrics {
        acc: solved as f64 / n,
        mean_time_s: records.iter().map(|r| r.time_s).sum::<f64>() / n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Histogram of per-task μ values with bins `[k·width, (k+1)·width)`,
/// covering 0 up to the largest value.
pub fn mu_histogram(mus: &[f64], width: f64) -> Vec<MuBin> {
    assert!(width > 0.0, "bin width must be positive");
    let finite: Vec<f64> = mus
        .iter()
        .copied()
        .filter(|m| m.is_finite() && *m >= 0.0)
        .collect();
    let top = finite.iter().copied().fold(0.0, f64::max);
    let nbins = (top / width).floor() as usize + 1;
    let mut bins: Vec<MuBin> = (0..nbins)
        .map(|k| MuBin {
            lo: k as f64 * width,
            hi: (k + 1) as f64 * width,
            count: 0,
        })
        .collect();
    for m in finite {
        let k = ((m / width).floor() as usize).min(nbins - 1);
        bins[k].count += 1;
    }
    bins
}

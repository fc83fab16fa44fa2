//! Binary relaxation primitives.
//!
//! A binary decision `x` is driven by an unconstrained logit `t`. The forward
//! pass is the Heaviside step `x = H(t)`; the backward pass borrows the
//! derivative of the temperature sigmoid `σ(t/τ)` (straight-through). Adding
//! logistic noise `L(0, s)` to the logit before thresholding makes `x` a
//! Bernoulli variable with `P(x = 1) = σ(t/s)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Guard used inside the logistic sampler.
pub const LOGISTIC_EPS: f64 = 1e-8;

/// Step function with the tie at zero resolved to 0.
#[inline]
pub fn heaviside(t: f64) -> u8 {
    u8::from(t > 0.0)
}

#[inline]
fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `σ(t/τ)`.
#[inline]
pub fn soft_sigmoid(t: f64, tau: f64) -> f64 {
    logistic(t / tau)
}

/// `d σ(t/τ) / dt = σ(1 − σ) / τ`, evaluated without cancellation in the tails.
#[inline]
pub fn sigmoid_grad(t: f64, tau: f64) -> f64 {
    let e = (-(t / tau).abs()).exp();
    let d = 1.0 + e;
    e / (d * d) / tau
}

/// Maps a uniform draw `u` to a logistic `L(0, s)` variate.
///
/// Uses the guarded inverse CDF `ln(eps + u / (1 − u + eps))`, which stays
/// finite at both ends of `[0, 1)`.
#[inline]
pub fn sample_logistic(u: f64, s: f64, eps: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    s * (eps + u / (1.0 - u + eps)).ln()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxOutput {
    pub x: f64,
    /// Straight-through derivative `∂x/∂t`.
    pub dxdt: f64,
}

/// Temperature sigmoid with optional logistic noise.
///
/// In hard mode the forward value is exactly 0 or 1 while `dxdt` is the soft
/// sigmoid's derivative at the (possibly perturbed) logit.
pub fn hot_sigmoid<R: Rng + ?Sized>(
    t: f64,
    tau: f64,
    s: f64,
    hard: bool,
    rand: bool,
    rng: &mut R,
) -> RelaxOutput {
    let t = if rand && s > 0.0 {
        t + sample_logistic(rng.random::<f64>(), s, LOGISTIC_EPS)
    } else {
        t
    };
    let dxdt = sigmoid_grad(t, tau);
    let x = if hard {
        f64::from(heaviside(t))
    } else {
        soft_sigmoid(t, tau)
    };
    RelaxOutput { x, dxdt }
}

/// Annealing schedule for the sigmoid temperature τ.
///
/// Linear from `tau1` to `tau_hot` over the warmup, then geometric from
/// `tau_hot` down to `tau2` at `max_epochs`, constant afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemperatureSchedule {
    pub tau1: f64,
    pub tau_hot: f64,
    pub tau2: f64,
    pub warmup_epochs: usize,
    pub max_epochs: usize,
}

impl Default for TemperatureSchedule {
    fn default() -> Self {
        Self {
            tau1: 30.0,
            tau_hot: 30.0,
            tau2: 0.01,
            warmup_epochs: 1,
            max_epochs: 2000,
        }
    }
}

impl TemperatureSchedule {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !(ok(self.tau1) && ok(self.tau_hot) && ok(self.tau2)) {
            return Err(Error::Config("temperatures must be positive".into()));
        }
        if self.max_epochs < 1 || self.warmup_epochs > self.max_epochs {
            return Err(Error::Config(
                "need 1 <= max_epochs and warmup_epochs <= max_epochs".into(),
            ));
        }
        Ok(())
    }

    pub fn tau_at(&self, epoch: usize) -> f64 {
        tau_at(epoch, self)
    }
}

pub fn tau_at(epoch: usize, sched: &TemperatureSchedule) -> f64 {
    let warm = sched.warmup_epochs;
    if epoch < warm {
        let f = epoch as f64 / warm as f64;
        return sched.tau1 + (sched.tau_hot - sched.tau1) * f;
    }
    if epoch >= sched.max_epochs {
        return sched.tau2;
    }
    let f = (epoch - warm) as f64 / (sched.max_epochs - warm) as f64;
    sched.tau_hot * (sched.tau2 / sched.tau_hot).powf(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseMode {
    Constant,
    Heat,
}

/// Schedule for the noise dispersion `s`.
///
/// `Heat` ramps linearly from `s_base` up to `s_peak` at `peak_epoch`, then
/// back down to `s_base` at `end_epoch`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSchedule {
    pub mode: NoiseMode,
    pub s_base: f64,
    pub s_peak: f64,
    pub peak_epoch: usize,
    pub end_epoch: usize,
}

impl Default for NoiseSchedule {
    fn default() -> Self {
        Self::constant(1.0)
    }
}

impl NoiseSchedule {
    pub fn constant(s: f64) -> Self {
        Self {
            mode: NoiseMode::Constant,
            s_base: s,
            s_peak: s,
            peak_epoch: 0,
            end_epoch: 0,
        }
    }

    pub fn heat(s_base: f64, s_peak: f64, peak_epoch: usize, end_epoch: usize) -> Self {
        Self {
            mode: NoiseMode::Heat,
            s_base,
            s_peak,
            peak_epoch,
            end_epoch,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s_base >= 0.0 && self.s_base.is_finite()) {
            return Err(Error::Config("s must be non-negative".into()));
        }
        if self.mode == NoiseMode::Heat {
            if !(self.s_peak >= 0.0 && self.s_peak.is_finite()) {
                return Err(Error::Config("s_peak must be non-negative".into()));
            }
            if self.end_epoch < self.peak_epoch {
                return Err(Error::Config(
                    "end_epoch must not precede peak_epoch".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn s_at(&self, epoch: usize) -> f64 {
        s_at(epoch, self)
    }
}

pub fn s_at(epoch: usize, sched: &NoiseSchedule) -> f64 {
    let s = match sched.mode {
        NoiseMode::Constant => sched.s_base,
        NoiseMode::Heat => {
            let (base, peak) = (sched.s_base, sched.s_peak);
            if epoch <= sched.peak_epoch {
                if sched.peak_epoch == 0 {
                    peak
                } else {
                    base + (peak - base) * epoch as f64 / sched.peak_epoch as f64
                }
            } else if epoch >= sched.end_epoch {
                base
            } else {
                let span = (sched.end_epoch - sched.peak_epoch) as f64;
                peak + (base - peak) * (epoch - sched.peak_epoch) as f64 / span
            }
        }
    };
    s.max(0.0)
}

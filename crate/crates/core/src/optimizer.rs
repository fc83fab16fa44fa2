//! Penalty-loss gradient steps with an adaptive penalty weight.
//!
//! The loss is `L = −v + (γ/ν)·max(0, w)^ν`. Instead of fixing γ, each step
//! picks the γ that (to first order) shrinks a violated constraint by the
//! fraction μ: `w(p − λ∇L) = (1 − μ)·w(p)`. The older three-case rule (AGA)
//! is available for comparison.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Learning rate λ.
    pub lambda: f64,
    /// Penalty exponent ν.
    pub nu: f64,
    /// Target relative reduction of a violated constraint per step.
    pub mu: f64,
    pub beta_v: f64,
    pub beta_w: f64,
    /// Added to the denominators of γ.
    pub eps: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            lambda: 0.1,
            nu: 1.0,
            mu: 0.5,
            beta_v: 0.5,
            beta_w: 0.5,
            eps: 1e-6,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x.is_finite() && x > 0.0;
        if !(pos(self.lambda) && pos(self.nu) && pos(self.eps)) {
            return Err(Error::Config("lambda, nu and eps must be positive".into()));
        }
        if !(self.mu >= 0.0 && self.mu.is_finite()) {
            return Err(Error::Config("mu must be non-negative".into()));
        }
        for b in [self.beta_v, self.beta_w] {
            if !(0.0..1.0).contains(&b) {
                return Err(Error::Config("EMA betas must lie in [0, 1)".into()));
            }
        }
        Ok(())
    }
}

/// EMA accumulators for ∇v and ∇w.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerState {
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    pub step: u64,
}

impl OptimizerState {
    pub fn new(dim: usize) -> Self {
        Self {
            v: vec![0.0; dim],
            w: vec![0.0; dim],
            step: 0,
        }
    }

    pub fn reset(&mut self) {
        self.v.fill(0.0);
        self.w.fill(0.0);
        self.step = 0;
    }
}

/// Objective and constraint values with their gradients at one point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GradSample {
    pub v: f64,
    /// Constraint value; positive means violated.
    pub w: f64,
    pub grad_v: Vec<f64>,
    pub grad_w: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaRule {
    #[default]
    Conga,
    Aga,
}

/// Which branch of the three-case AGA rule fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AgaCase {
    /// ∇v·∇w < 0
    Opposed = 1,
    /// ∇v·∇w > 0 and r1 < r2
    Averaged = 2,
    /// everything else (parallel or orthogonal gradients)
    Fallback = 3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub gamma: f64,
    /// Set only when the AGA rule chose γ.
    pub case: Option<AgaCase>,
    pub active: bool,
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `−v + (γ/ν)·max(0, w)^ν`.
pub fn penalty_loss(v: f64, w: f64, gamma: f64, nu: f64) -> f64 {
    -v + gamma / nu * w.max(0.0).powf(nu)
}

/// Adaptive penalty weight for a violated point (`w > 0`), computed from the
/// smoothed gradients.
pub fn conga_gamma(v_acc: &[f64], w_acc: &[f64], w: f64, cfg: &OptimizerConfig) -> f64 {
    let num = dot(v_acc, w_acc) + cfg.mu * w / cfg.lambda;
    let den = w.powf(cfg.nu - 1.0) * dot(w_acc, w_acc) + cfg.eps;
    (num / den).max(0.0)
}

/// The three-case AGA rule on raw gradients.
pub fn aga_gamma(
    grad_v: &[f64],
    grad_w: &[f64],
    w: f64,
    lambda: f64,
    nu: f64,
    eps: f64,
) -> (f64, AgaCase) {
    let vw = dot(grad_v, grad_w);
    if vw < 0.0 {
        return (0.0, AgaCase::Opposed);
    }
    let vv = dot(grad_v, grad_v);
    let ww = dot(grad_w, grad_w);
    let scale = w.powf(nu - 1.0);
    // r1 < r2  <=>  (∇v·∇w)² < |∇v|²|∇w|² when ∇v·∇w > 0; comparing the
    // cross-multiplied form keeps eps from splitting exactly parallel pairs.
    if vw > 0.0 && vw * vw < vv * ww {
        let r1 = vw / (scale * ww + eps);
        let r2 = vv / (scale * vw + eps);
        return (0.5 * (r1 + r2), AgaCase::Averaged);
    }
    let r3 = (vw + w / lambda) / (scale * ww + eps);
    (r3.max(0.0), AgaCase::Fallback)
}

/// `beta·acc + (1 − beta)·grad`, in place.
pub fn ema_update(acc: &mut [f64], grad: &[f64], beta: f64) {
    debug_assert_eq!(acc.len(), grad.len());
    for (a, g) in acc.iter_mut().zip(grad) {
        *a = beta * *a + (1.0 - beta) * g;
    }
}

/// One penalty-gradient step on `params`.
///
/// Under [`GammaRule::Conga`] the EMAs are refreshed first and both γ and
/// the step use them. Under [`GammaRule::Aga`] the raw gradients are used
/// throughout and the EMAs are left untouched.
pub fn conga_step(
    params: &mut [f64],
    sample: &GradSample,
    state: &mut OptimizerState,
    cfg: &OptimizerConfig,
    rule: GammaRule,
) -> StepInfo {
    step_with(params, sample, state, cfg, rule, None)
}

/// Like [`conga_step`] but with γ forced to `gamma` whenever the penalty is
/// active.
pub fn fixed_gamma_step(
    params: &mut [f64],
    sample: &GradSample,
    state: &mut OptimizerState,
    cfg: &OptimizerConfig,
    gamma: f64,
) -> StepInfo {
    step_with(params, sample, state, cfg, GammaRule::Conga, Some(gamma))
}

fn step_with(
    params: &mut [f64],
    sample: &GradSample,
    state: &mut OptimizerState,
    cfg: &OptimizerConfig,
    rule: GammaRule,
    forced: Option<f64>,
) -> StepInfo {
    debug_assert_eq!(params.len(), sample.grad_v.len());
    debug_assert_eq!(params.len(), sample.grad_w.len());
    state.step += 1;

    let (v_dir, w_dir): (&[f64], &[f64]) = match rule {
        GammaRule::Conga => {
            ema_update(&mut state.v, &sample.grad_v, cfg.beta_v);
            ema_update(&mut state.w, &sample.grad_w, cfg.beta_w);
            (&state.v, &state.w)
        }
        GammaRule::Aga => (&sample.grad_v, &sample.grad_w),
    };

    let active = sample.w > 0.0;
    let (gamma, case) = if !active {
        (0.0, None)
    } else if let Some(g) = forced {
        (g, None)
    } else {
        match rule {
            GammaRule::Conga => (conga_gamma(v_dir, w_dir, sample.w, cfg), None),
            GammaRule::Aga => {
                let (g, c) = aga_gamma(v_dir, w_dir, sample.w, cfg.lambda, cfg.nu, cfg.eps);
                (g, Some(c))
            }
        }
    };

    let pull = if active {
        gamma * sample.w.powf(cfg.nu - 1.0)
    } else {
        0.0
    };
    for ((p, v), w) in params.iter_mut().zip(v_dir).zip(w_dir) {
        *p -= cfg.lambda * (-v + pull * w);
    }
    StepInfo {
        gamma,
        case,
        active,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg(lambda: f64, mu: f64, nu: f64) -> OptimizerConfig {
        OptimizerConfig {
            lambda,
            mu,
            nu,
            beta_v: 0.0,
            beta_w: 0.0,
            eps: 1e-6,
        }
    }

    #[test]
    fn loss_values() {
        assert_eq!(penalty_loss(10.0, -3.0, 5.0, 1.0), -10.0);
        assert_eq!(penalty_loss(10.0, 2.0, 3.0, 1.0), -4.0);
        assert_eq!(penalty_loss(10.0, 2.0, 3.0, 2.0), -4.0);
    }

    #[test]
    fn conga_gamma_values() {
        let g = conga_gamma(&[4.0, 4.0], &[2.0, 2.0], 1.0, &cfg(0.1, 0.5, 1.0));
        assert_relative_eq!(g, 2.625, max_relative = 1e-6);
        let g = conga_gamma(&[-1.0, 0.0], &[1.0, 0.0], 1.0, &cfg(1.0, 0.0, 1.0));
        assert_eq!(g, 0.0);
        let g = conga_gamma(&[4.0, 4.0], &[2.0, 2.0], 2.0, &cfg(0.1, 0.5, 2.0));
        assert_relative_eq!(g, 1.625, max_relative = 1e-6);
    }

    #[test]
    fn conga_gamma_survives_zero_gradient() {
        let g = conga_gamma(&[0.0, 0.0], &[0.0, 0.0], 1.0, &cfg(0.1, 0.5, 1.0));
        assert!(g.is_finite() && g > 0.0);
    }

    #[test]
    fn aga_cases() {
        let (g, c) = aga_gamma(&[-1.0, 0.0], &[1.0, 0.0], 1.0, 0.1, 1.0, 1e-6);
        assert_eq!((g, c), (0.0, AgaCase::Opposed));

        let (g, c) = aga_gamma(&[4.0, 2.0], &[2.0, 2.0], 1.0, 0.1, 1.0, 1e-6);
        assert_eq!(c, AgaCase::Averaged);
        assert_relative_eq!(g, (1.5 + 20.0 / 12.0) / 2.0, max_relative = 1e-6);

        let (g, c) = aga_gamma(&[2.0, 2.0], &[1.0, 1.0], 1.0, 0.1, 1.0, 1e-6);
        assert_eq!(c, AgaCase::Fallback);
        assert_relative_eq!(g, 7.0, max_relative = 1e-6);
    }

    #[test]
    fn ema_values() {
        let mut a = vec![0.0, 0.0];
        ema_update(&mut a, &[2.0, 4.0], 0.5);
        assert_eq!(a, [1.0, 2.0]);
        let mut a = vec![1.0, 2.0];
        ema_update(&mut a, &[2.0, 4.0], 0.0);
        assert_eq!(a, [2.0, 4.0]);
        let mut a = vec![1.0, 2.0];
        ema_update(&mut a, &[3.0, 6.0], 0.5);
        assert_eq!(a, [2.0, 4.0]);
    }

    fn toy(p: &[f64]) -> GradSample {
        let (x, y) = (p[0], p[1]);
        GradSample {
            v: x * x + y * y,
            w: (x - 1.0).powi(2) + (y - 1.0).powi(2) - 1.0,
            grad_v: vec![2.0 * x, 2.0 * y],
            grad_w: vec![2.0 * (x - 1.0), 2.0 * (y - 1.0)],
        }
    }

    #[test]
    fn worked_step_from_violated_point() {
        let c = cfg(0.1, 0.5, 1.0);
        let mut p = vec![2.0, 2.0];
        let mut st = OptimizerState::new(2);
        let s = toy(&p);
        let info = conga_step(&mut p, &s, &mut st, &c, GammaRule::Conga);
        assert_relative_eq!(info.gamma, 2.625, max_relative = 1e-6);
        assert_relative_eq!(p[0], 1.875, max_relative = 1e-6);
        assert_relative_eq!(p[1], 1.875, max_relative = 1e-6);
        assert_eq!(st.step, 1);
        assert_eq!(st.v, [4.0, 4.0]);
    }

    #[test]
    fn feasible_step_is_pure_ascent() {
        let c = cfg(0.1, 0.5, 1.0);
        let mut p = vec![0.2, 0.8];
        let s = GradSample {
            v: 0.0,
            w: -1.0,
            grad_v: vec![0.4, 1.6],
            grad_w: vec![-1.6, -0.4],
        };
        let mut st = OptimizerState::new(2);
        let info = conga_step(&mut p, &s, &mut st, &c, GammaRule::Conga);
        assert_eq!(info.gamma, 0.0);
        assert!(!info.active);
        assert_relative_eq!(p[0], 0.2 + 0.1 * 0.4);
        assert_relative_eq!(p[1], 0.8 + 0.1 * 1.6);
    }

    #[test]
    fn zero_violation_counts_as_feasible() {
        let c = cfg(0.1, 0.5, 1.0);
        let mut p = vec![1.0];
        let s = GradSample {
            v: 1.0,
            w: 0.0,
            grad_v: vec![1.0],
            grad_w: vec![1.0],
        };
        let info = conga_step(
            &mut p,
            &s,
            &mut OptimizerState::new(1),
            &c,
            GammaRule::Conga,
        );
        assert!(!info.active);
        assert_eq!(info.gamma, 0.0);
    }

    #[test]
    fn aga_step_leaves_ema_alone() {
        let c = cfg(0.1, 0.5, 1.0);
        let mut p = vec![2.0, 2.0];
        let mut st = OptimizerState::new(2);
        let s = toy(&p);
        let info = conga_step(&mut p, &s, &mut st, &c, GammaRule::Aga);
        assert!(info.case.is_some());
        assert_eq!(st.v, [0.0, 0.0]);
        assert_eq!(st.step, 1);
    }

    #[test]
    fn forced_zero_gamma_is_gradient_ascent() {
        let c = OptimizerConfig {
            beta_v: 0.0,
            beta_w: 0.0,
            ..Default::default()
        };
        let mut p = vec![2.0, 2.0];
        let s = toy(&p);
        fixed_gamma_step(&mut p, &s, &mut OptimizerState::new(2), &c, 0.0);
        assert_relative_eq!(p[0], 2.0 + 0.1 * 4.0);
        assert_relative_eq!(p[1], 2.0 + 0.1 * 4.0);
    }

    #[test]
    fn validate_config() {
        OptimizerConfig::default().validate().unwrap();
        assert!(OptimizerConfig {
            beta_w: 1.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(OptimizerConfig {
            lambda: 0.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(OptimizerConfig {
            mu: -0.1,
            ..Default::default()
        }
        .validate()
        .is_err());
    }
}

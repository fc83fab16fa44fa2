//! Two-dimensional continuous test problems for the optimizer.
//!
//! Maximize `v = x² + y²` subject to staying inside a circle (or a union of
//! circles). The coordinates are optimized directly, without any sigmoid
//! relaxation, which makes the behaviour of the γ rules easy to inspect.

use serde::{Deserialize, Serialize};

use crate::data::trajectory::TrajectoryRow;
use crate::error::{Error, Result};
use crate::optimizer::{
    aga_gamma, conga_step, GammaRule, GradSample, OptimizerConfig, OptimizerState,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

impl Circle {
    pub fn new(cx: f64, cy: f64, r: f64) -> Self {
        Self { cx, cy, r }
    }
}

/// `v = x² + y²` with the feasible set given by one circle or a union.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToyProblem {
    pub circles: Vec<Circle>,
}

impl ToyProblem {
    pub fn new(circles: Vec<Circle>) -> Result<Self> {
        if circles.is_empty() {
            return Err(Error::Config(
                "toy problem needs at least one circle".into(),
            ));
        }
        if circles.iter().any(|c| !(c.r > 0.0)) {
            return Err(Error::Config("circle radii must be positive".into()));
        }
        Ok(Self { circles })
    }

    /// Unit circle centred at (1, 1).
    pub fn unit_circle() -> Self {
        Self {
            circles: vec![Circle::new(1.0, 1.0, 1.0)],
        }
    }

    /// Unit circles at (1, 1) and (3, 3); a non-convex feasible set.
    pub fn two_circles() -> Self {
        Self {
            circles: vec![Circle::new(1.0, 1.0, 1.0), Circle::new(3.0, 3.0, 1.0)],
        }
    }

    /// Best objective on the feasible set: the point of some circle
    /// farthest from the origin.
    pub fn optimum(&self) -> f64 {
        self.circles
            .iter()
            .map(|c| (c.cx.hypot(c.cy) + c.r).powi(2))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of the circle whose constraint attains the minimum at `p`.
    pub fn active_circle(&self, p: (f64, f64)) -> usize {
        let mut best = (0, f64::INFINITY);
        for (j, c) in self.circles.iter().enumerate() {
            let w = circle_w(c, p);
            if w < best.1 {
                best = (j, w);
            }
        }
        best.0
    }
}

fn circle_w(c: &Circle, (x, y): (f64, f64)) -> f64 {
    (x - c.cx).powi(2) + (y - c.cy).powi(2) - c.r * c.r
}

pub fn eval_toy(p: (f64, f64), prob: &ToyProblem) -> GradSample {
    let (x, y) = p;
    let c = &prob.circles[prob.active_circle(p)];
    GradSample {
        v: x * x + y * y,
        w: circle_w(c, p),
        grad_v: vec![2.0 * x, 2.0 * y],
        grad_w: vec![2.0 * (x - c.cx), 2.0 * (y - c.cy)],
    }
}

/// 0 when feasible, otherwise the AGA branch at this point.
fn point_case(sample: &GradSample, cfg: &OptimizerConfig) -> u8 {
    if sample.w <= 0.0 {
        0
    } else {
        aga_gamma(
            &sample.grad_v,
            &sample.grad_w,
            sample.w,
            cfg.lambda,
            cfg.nu,
            cfg.eps,
        )
        .1 as u8
    }
}

/// Iterates the penalty-gradient step from `p0`.
///
/// Returns `steps + 1` rows: row `k` holds iterate `k` and the γ of the step
/// taken from it (for the last row, the γ a further step would use).
pub fn run_trajectory(
    p0: (f64, f64),
    prob: &ToyProblem,
    rule: GammaRule,
    cfg: &OptimizerConfig,
    steps: usize,
) -> Vec<TrajectoryRow> {
    let mut params = vec![p0.0, p0.1];
    let mut state = OptimizerState::new(2);
    let mut rows = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let p = (params[0], params[1]);
        let sample = eval_toy(p, prob);
        let case = point_case(&sample, cfg);
        let info = if k < steps {
            conga_step(&mut params, &sample, &mut state, cfg, rule)
        } else {
            let mut scratch = params.clone();
            conga_step(&mut scratch, &sample, &mut state.clone(), cfg, rule)
        };
        rows.push(TrajectoryRow {
            step: k,
            x: p.0,
            y: p.1,
            v: sample.v,
            w: sample.w,
            gamma: info.gamma,
            case,
        });
    }
    rows
}

/// One labelled trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyRun {
    pub label: String,
    pub rule: GammaRule,
    pub config: OptimizerConfig,
    pub rows: Vec<TrajectoryRow>,
}

impl ToyRun {
    pub fn last(&self) -> &TrajectoryRow {
        self.rows.last().expect("trajectory has at least one row")
    }
}

fn run(
    label: String,
    p0: (f64, f64),
    prob: &ToyProblem,
    rule: GammaRule,
    cfg: OptimizerConfig,
    steps: usize,
) -> ToyRun {
    ToyRun {
        rows: run_trajectory(p0, prob, rule, &cfg, steps),
        label,
        rule,
        config: cfg,
    }
}

fn rule_name(rule: GammaRule) -> &'static str {
    match rule {
        GammaRule::Conga => "conga",
        GammaRule::Aga => "aga",
    }
}

/// CONGA on the unit circle for each learning rate.
pub fn lambda_sweep(
    p0: (f64, f64),
    lambdas: &[f64],
    base: &OptimizerConfig,
    steps: usize,
) -> Vec<ToyRun> {
    let prob = ToyProblem::unit_circle();
    lambdas
        .iter()
        .map(|&lambda| {
            let cfg = OptimizerConfig { lambda, ..*base };
            run(
                format!("conga_lambda{lambda}"),
                p0,
                &prob,
                GammaRule::Conga,
                cfg,
                steps,
            )
        })
        .collect()
}

/// AGA and then CONGA with each μ, all from the same (typically infeasible)
/// start.
pub fn forbidden_start(
    p0: (f64, f64),
    mus: &[f64],
    base: &OptimizerConfig,
    steps: usize,
) -> Vec<ToyRun> {
    let prob = ToyProblem::unit_circle();
    let mut runs = vec![run("aga".into(), p0, &prob, GammaRule::Aga, *base, steps)];
    runs.extend(mus.iter().map(|&mu| {
        let cfg = OptimizerConfig { mu, ..*base };
        run(
            format!("conga_mu{mu}"),
            p0,
            &prob,
            GammaRule::Conga,
            cfg,
            steps,
        )
    }));
    runs
}

/// Both γ rules from the same start on the unit circle.
pub fn aga_vs_conga(p0: (f64, f64), base: &OptimizerConfig, steps: usize) -> Vec<ToyRun> {
    let prob = ToyProblem::unit_circle();
    [GammaRule::Aga, GammaRule::Conga]
        .into_iter()
        .map(|rule| run(rule_name(rule).into(), p0, &prob, rule, *base, steps))
        .collect()
}

/// Start inside the first circle of [`ToyProblem::two_circles`].
pub const EMA_START: (f64, f64) = (0.8, 0.8);

/// Settings for [`ema_scenario`] under which a smoothed `W` carries the
/// iterate across the gap to the second circle and a raw one does not.
pub fn ema_base() -> OptimizerConfig {
    OptimizerConfig {
        lambda: 0.2,
        mu: 0.5,
        beta_v: 0.9,
        ..OptimizerConfig::default()
    }
}

/// CONGA on the two-circle problem for each `beta_w`.
pub fn ema_scenario(
    p0: (f64, f64),
    betas_w: &[f64],
    base: &OptimizerConfig,
    steps: usize,
) -> Vec<ToyRun> {
    let prob = ToyProblem::two_circles();
    betas_w
        .iter()
        .map(|&beta_w| {
            let cfg = OptimizerConfig { beta_w, ..*base };
            run(
                format!("conga_betaw{beta_w}"),
                p0,
                &prob,
                GammaRule::Conga,
                cfg,
                steps,
            )
        })
        .collect()
}

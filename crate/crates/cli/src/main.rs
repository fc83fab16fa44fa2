#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use conga::baselines::{run_baseline, Algorithm, BaselineConfig};
use conga::bench::{load_suite, parse_solvers, reference_optimum, run_bench, BenchConfig, Solver};
use conga::data::format::{read_instance_file, serialize_instance};
use conga::data::generate::{generate_instance, CorrelationClass, DatasetSpec};
use conga::data::metrics::{compute_metrics, reaches_optimum};
use conga::data::records::{write_records_csv, write_records_jsonl, BenchRecord};
use conga::data::trajectory::write_trajectory_csv;
use conga::knapsack::{
    brute_force_optimal, dp_optimal, is_feasible, pack_overweight, BRUTE_FORCE_MAX_ITEMS,
};
use conga::relax::{NoiseSchedule, TemperatureSchedule};
use conga::rng::stream;
use conga::toy2d::{self, ToyProblem, ToyRun};
use conga::{solve, EvolutionConfig, Execution, MuPreset, OptimizerConfig, Schedules};

use config::ConfigFile;

/// Constrained binary optimization with adaptive penalty gradients.
#[derive(Debug, Parser)]
#[command(name = "conga", version)]
struct Cli {
    /// key = value file of hyperparameters; command-line flags take precedence
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one instance file
    Solve(SolveArgs),
    /// Run solvers over every instance in a directory
    Bench(BenchArgs),
    /// Generate a random instance
    Gen(GenArgs),
    /// Continuous 2-D optimizer diagnostics
    Toy2d(ToyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresetArg {
    /// mu1 = 0.2, mu2 = 8.0
    Wide,
    /// mu1 = 0.2, mu2 = 0.8
    Narrow,
}

impl From<PresetArg> for MuPreset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Wide => MuPreset::Wide,
            PresetArg::Narrow => MuPreset::Narrow,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NoiseArg {
    Constant,
    Heat,
}

/// Solver hyperparameters shared by `solve` and `bench`.
#[derive(Debug, Clone, Default, Args)]
struct HyperArgs {
    #[arg(long, help = "Generations of directed evolution [default: 2]")]
    n_generations: Option<usize>,
    #[arg(long, help = "Maximum epochs per generation [default: 2000]")]
    epochs: Option<usize>,
    #[arg(long, help = "Agents per generation [default: 50]")]
    n_agents: Option<usize>,
    #[arg(long, help = "Learning rate λ [default: 0.1]")]
    lr: Option<f64>,
    #[arg(long, help = "Penalty exponent ν [default: 1.0]")]
    nu: Option<f64>,
    #[arg(long, value_enum, help = "Initial μ range preset [default: wide]")]
    mu_preset: Option<PresetArg>,
    #[arg(long, help = "Lower end of the initial μ range [default: 0.2]")]
    mu1: Option<f64>,
    #[arg(long, help = "Upper end of the initial μ range [default: 8.0]")]
    mu2: Option<f64>,
    #[arg(
        long,
        help = "μ range expansion factor between generations [default: 1.25]"
    )]
    frac: Option<f64>,
    #[arg(
        long,
        help = "Share of agents that set the next μ range [default: 0.2]"
    )]
    top_fraction: Option<f64>,
    #[arg(long, help = "Smallest μ after range expansion [default: 0.01]")]
    mu_floor: Option<f64>,
    #[arg(long, help = "Smoothing factor for the value gradient [default: 0.5]")]
    beta_v: Option<f64>,
    #[arg(
        long,
        help = "Smoothing factor for the constraint gradient [default: 0.5]"
    )]
    beta_w: Option<f64>,
    #[arg(long, help = "Division guard in γ [default: 1e-6]")]
    eps: Option<f64>,
    #[arg(long, help = "Sigmoid temperature at epoch 0 [default: 30]")]
    tau1: Option<f64>,
    #[arg(long, help = "Temperature at the end of warmup [default: 30]")]
    tau_hot: Option<f64>,
    #[arg(long, help = "Final temperature [default: 0.01]")]
    tau2: Option<f64>,
    #[arg(
        long,
        alias = "tau-warmup-epochs",
        help = "Temperature warmup epochs [default: 1]"
    )]
    tau_warmap_epochs: Option<usize>,
    #[arg(
        long,
        help = "Epoch at which the temperature reaches tau2 [default: 2000]"
    )]
    tau_max_epochs: Option<usize>,
    #[arg(long, value_enum, help = "Noise schedule [default: constant]")]
    noise: Option<NoiseArg>,
    #[arg(long, help = "Logistic noise scale s [default: 1.0]")]
    s: Option<f64>,
    #[arg(long, help = "Peak noise scale for the heat schedule [default: 2.0]")]
    s_peak: Option<f64>,
    #[arg(
        long,
        help = "Epoch of peak noise for the heat schedule [default: 500]"
    )]
    heat_peak_epoch: Option<usize>,
    #[arg(long, help = "Epoch the heat schedule returns to s [default: 1000]")]
    heat_end_epoch: Option<usize>,
    #[arg(long, help = "Stop once a known optimum is reached")]
    early_exit: bool,
}

const HYPER_KEYS: &[&str] = &[
    "n-generations",
    "epochs",
    "n-agents",
    "lr",
    "nu",
    "mu-preset",
    "mu1",
    "mu2",
    "frac",
    "top-fraction",
    "mu-floor",
    "beta-v",
    "beta-w",
    "eps",
    "tau1",
    "tau-hot",
    "tau2",
    "tau-warmap-epochs",
    "tau-max-epochs",
    "noise",
    "s",
    "s-peak",
    "heat-peak-epoch",
    "heat-end-epoch",
    "early-exit",
    "seed",
];

fn pick<T>(flag: Option<T>, file: &ConfigFile, key: &str, default: T) -> Result<T>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    Ok(match flag {
        Some(v) => v,
        None => file.get(key)?.unwrap_or(default),
    })
}

fn pick_enum<T: ValueEnum>(flag: Option<T>, file: &ConfigFile, key: &str, default: T) -> Result<T> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match file.get::<String>(key)? {
        Some(s) => T::from_str(&s, true).map_err(|e| anyhow::anyhow!("config key {key}: {e}")),
        None => Ok(default),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Resolved {
    evolution: EvolutionConfig,
    optimizer: OptimizerConfig,
    schedules: Schedules,
}

impl HyperArgs {
    fn resolve(&self, file: &ConfigFile, seed: u64) -> Result<Resolved> {
        let de = EvolutionConfig::default();
        let dopt = OptimizerConfig::default();
        let dtau = TemperatureSchedule::default();
        let preset: MuPreset =
            pick_enum(self.mu_preset, file, "mu-preset", PresetArg::Wide)?.into();
        let (lo, hi) = preset.range();
        let evolution = EvolutionConfig {
            n_agents: pick(self.n_agents, file, "n-agents", de.n_agents)?,
            epochs: pick(self.epochs, file, "epochs", de.epochs)?,
            n_generations: pick(self.n_generations, file, "n-generations", de.n_generations)?,
            mu_lo: pick(self.mu1, file, "mu1", lo)?,
            mu_hi: pick(self.mu2, file, "mu2", hi)?,
            frac: pick(self.frac, file, "frac", de.frac)?,
            top_fraction: pick(self.top_fraction, file, "top-fraction", de.top_fraction)?,
            mu_floor: pick(self.mu_floor, file, "mu-floor", de.mu_floor)?,
            seed,
            early_exit: self.early_exit || file.get("early-exit")?.unwrap_or(false),
            execution: Execution::Parallel,
        };
        let optimizer = OptimizerConfig {
            lambda: pick(self.lr, file, "lr", dopt.lambda)?,
            nu: pick(self.nu, file, "nu", dopt.nu)?,
            mu: dopt.mu,
            beta_v: pick(self.beta_v, file, "beta-v", dopt.beta_v)?,
            beta_w: pick(self.beta_w, file, "beta-w", dopt.beta_w)?,
            eps: pick(self.eps, file, "eps", dopt.eps)?,
        };
        let tau = TemperatureSchedule {
            tau1: pick(self.tau1, file, "tau1", dtau.tau1)?,
            tau_hot: pick(self.tau_hot, file, "tau-hot", dtau.tau_hot)?,
            tau2: pick(self.tau2, file, "tau2", dtau.tau2)?,
            warmup_epochs: pick(
                self.tau_warmap_epochs,
                file,
                "tau-warmap-epochs",
                dtau.warmup_epochs,
            )?,
            max_epochs: pick(self.tau_max_epochs, file, "tau-max-epochs", dtau.max_epochs)?,
        };
        let s = pick(self.s, file, "s", 1.0)?;
        let noise = match pick_enum(self.noise, file, "noise", NoiseArg::Constant)? {
            NoiseArg::Constant => NoiseSchedule::constant(s),
            NoiseArg::Heat => NoiseSchedule::heat(
                s,
                pick(self.s_peak, file, "s-peak", 2.0)?,
                pick(self.heat_peak_epoch, file, "heat-peak-epoch", 500)?,
                pick(self.heat_end_epoch, file, "heat-end-epoch", 1000)?,
            ),
        };
        let r = Resolved {
            evolution,
            optimizer,
            schedules: Schedules { tau, noise },
        };
        r.evolution.validate()?;
        r.optimizer.validate()?;
        r.schedules.validate()?;
        Ok(r)
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Instance file
    path: PathBuf,
    /// conga, greedy, sa, ga or bb
    #[arg(long, default_value = "conga")]
    algorithm: String,
    #[arg(long, help = "Random seed [default: 0]")]
    seed: Option<u64>,
    /// Append the result as one JSON line to this file
    #[arg(long, value_name = "FILE")]
    jsonl: Option<PathBuf>,
    #[command(flatten)]
    hyper: HyperArgs,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Directory of instance files
    dir: PathBuf,
    /// Comma-separated solvers: conga, greedy, sa, ga, bb
    #[arg(long, default_value = "conga")]
    algorithms: String,
    #[arg(long, value_name = "FILE")]
    out_csv: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    out_jsonl: Option<PathBuf>,
    #[arg(long, help = "Random seed [default: 0]")]
    seed: Option<u64>,
    /// Instances solved concurrently; 0 uses every core
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Run agents and instances on the calling thread only
    #[arg(long)]
    sequential: bool,
    /// Write time_s = 0 so repeated runs are byte-identical
    #[arg(long)]
    omit_time: bool,
    /// Print the distribution of the winning agents' μ with this bin width
    #[arg(long, value_name = "WIDTH")]
    mu_hist: Option<f64>,
    #[command(flatten)]
    hyper: HyperArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// LD-UC, HD-UC, HD-WC or HD-SC
    #[arg(long)]
    class: CorrelationClass,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coefficient range R; weights are drawn from 1..=R
    #[arg(long, default_value_t = 1000)]
    range: u32,
    /// Capacity as a share of the total weight
    #[arg(long, default_value_t = 0.75)]
    capacity_ratio: f64,
    /// Append the exact optimum as an "opt" line
    #[arg(long)]
    with_opt: bool,
    /// Output file, or a directory to write <name>.txt into; stdout if absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scenario {
    LambdaSweep,
    ForbiddenStart,
    Ema,
    AgaVsConga,
}

#[derive(Debug, Args)]
struct ToyArgs {
    #[arg(long, value_enum)]
    scenario: Scenario,
    /// Learning rates for lambda-sweep
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.03,0.1")]
    lambdas: Vec<f64>,
    /// Start point x,y (scenario-specific default)
    #[arg(long, value_parser = parse_point)]
    start: Option<(f64, f64)>,
    /// μ values (forbidden-start runs one per value; others use the first)
    #[arg(long, value_delimiter = ',')]
    mu: Vec<f64>,
    /// beta_w values for the ema scenario; a single value elsewhere
    #[arg(long, value_delimiter = ',')]
    beta_w: Vec<f64>,
    #[arg(long)]
    beta_v: Option<f64>,
    /// Learning rate outside lambda-sweep
    #[arg(long)]
    lr: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, default_value_t = 5000)]
    steps: usize,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn parse_point(s: &str) -> std::result::Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| e.to_string());
    Ok((f(x)?, f(y)?))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn cmd_solve(args: SolveArgs, file: &ConfigFile) -> Result<ExitCode> {
    let inst = read_instance_file(&args.path)
        .with_context(|| format!("reading {}", args.path.display()))?;
    let solver: Solver = args.algorithm.parse()?;
    let seed = pick(args.seed, file, "seed", 0)?;
    let start = Instant::now();
    let (value, packing, best_mu) = match solver {
        Solver::Conga => {
            let r = args.hyper.resolve(file, seed)?;
            let rep = solve(&inst, &r.evolution, &r.optimizer, &r.schedules)?;
            (rep.best_value, rep.best_packing, Some(rep.best_mu))
        }
        Solver::Baseline(a) => {
            let (v, x) = run_baseline(&inst, &BaselineConfig::new(a), &mut stream(seed, 0))?;
            (v, x, None)
        }
    };
    let time_s = start.elapsed().as_secs_f64();
    let feasible = is_feasible(&inst, &packing);
    let used = pack_overweight(&inst, &packing) + inst.capacity;

    println!(
        "instance   {} ({} items, capacity {})",
        inst.name,
        inst.len(),
        inst.capacity
    );
    println!("algorithm  {solver}");
    println!("best_value {value}");
    let missed = match inst.optimal_value {
        Some(opt) => {
            let hit = reaches_optimum(value, opt);
            println!(
                "optimal    {opt} ({})",
                if hit { "reached" } else { "missed" }
            );
            !hit
        }
        None => false,
    };
    println!("feasible   {feasible} (weight {used} / {})", inst.capacity);
    if let Some(mu) = best_mu {
        println!("best_mu    {mu}");
    }
    println!("time_s     {time_s:.3}");
    println!("packing    {}", packing.to_bitstring());

    if let Some(path) = &args.jsonl {
        let opt = reference_optimum(&inst).unwrap_or(value);
        let rec = BenchRecord::new(
            solver.name(),
            inst.name.clone(),
            inst.len(),
            value,
            opt,
            time_s,
        );
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening {}", path.display()))?;
        write_records_jsonl(&[rec], &mut f)?;
    }
    if !feasible {
        bail!("solver returned an infeasible packing");
    }
    Ok(if missed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_bench(args: BenchArgs, file: &ConfigFile) -> Result<ExitCode> {
    let instances =
        load_suite(&args.dir).with_context(|| format!("loading {}", args.dir.display()))?;
    if instances.is_empty() {
        bail!("no instance files in {}", args.dir.display());
    }
    let seed = pick(args.seed, file, "seed", 0)?;
    let r = args.hyper.resolve(file, seed)?;
    let execution = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let cfg = BenchConfig {
        solvers: parse_solvers(&args.algorithms)?,
        seed,
        workers: args.workers,
        execution,
        omit_time: args.omit_time,
        evolution: r.evolution,
        optimizer: r.optimizer,
        schedules: r.schedules,
        baseline: BaselineConfig::new(Algorithm::Greedy),
    };
    let out = run_bench(&instances, &cfg)?;
    for t in &out.tasks {
        let inst = instances
            .iter()
            .find(|i| i.name == t.dataset)
            .expect("task instance");
        if !is_feasible(inst, &t.packing) {
            bail!(
                "{} returned an infeasible packing on {}",
                t.solver,
                t.dataset
            );
        }
    }

    if let Some(path) = &args.out_csv {
        let mut w = create(path)?;
        write_records_csv(&out.records, &mut w)?;
        w.flush()?;
    }
    if let Some(path) = &args.out_jsonl {
        let mut w = create(path)?;
        write_records_jsonl(&out.records, &mut w)?;
        w.flush()?;
    }
    for solver in &cfg.solvers {
        let recs: Vec<BenchRecord> = out
            .records
            .iter()
            .filter(|r| r.algorithm == solver.name())
            .cloned()
            .collect();
        let m = compute_metrics(&recs)?;
        println!(
            "{:<8} acc {:.3}  mean time {:.3} s  ({} instances)",
            solver.name(),
            m.acc,
            m.mean_time_s,
            recs.len()
        );
    }
    if let Some(width) = args.mu_hist {
        if !(width > 0.0) {
            bail!("--mu-hist width must be positive");
        }
        println!("best mu histogram (bin width {width}):");
        for b in out.mu_histogram(width) {
            println!("  [{:.3}, {:.3})  {}", b.lo, b.hi, b.count);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    let mut spec = DatasetSpec::new(args.class, args.n, args.seed).with_range(args.range);
    spec.capacity_ratio = args.capacity_ratio;
    spec.validate()?;
    let mut inst = generate_instance(&spec, &mut stream(args.seed, 0))?;
    if args.with_opt {
        let (opt, _) = if inst.len() <= BRUTE_FORCE_MAX_ITEMS {
            brute_force_optimal(&inst)?
        } else {
            dp_optimal(&inst)?
        };
        inst = inst.with_optimum(opt);
    }
    let text = serialize_instance(&inst);
    match &args.out {
        None => print!("{text}"),
        Some(out) => {
            let path = if out.is_dir() {
                out.join(format!("{}.txt", inst.name))
            } else {
                out.clone()
            };
            let mut w = create(&path)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
            println!("{}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_toy2d(args: ToyArgs) -> Result<ExitCode> {
    let mut base = match args.scenario {
        Scenario::Ema => toy2d::ema_base(),
        _ => OptimizerConfig::default(),
    };
    if let Some(&mu) = args.mu.first() {
        base.mu = mu;
    }
    if let Some(lr) = args.lr {
        base.lambda = lr;
    }
    if let Some(b) = args.beta_v {
        base.beta_v = b;
    }
    if let Some(nu) = args.nu {
        base.nu = nu;
    }
    if let Some(eps) = args.eps {
        base.eps = eps;
    }
    if args.scenario != Scenario::Ema {
        if let Some(&b) = args.beta_w.first() {
            base.beta_w = b;
        }
    }
    base.validate()?;
    if args.steps == 0 {
        bail!("--steps must be at least 1");
    }

    let (runs, prob): (Vec<ToyRun>, ToyProblem) = match args.scenario {
        Scenario::LambdaSweep => (
            toy2d::lambda_sweep(
                args.start.unwrap_or((0.5, 0.5)),
                &args.lambdas,
                &base,
                args.steps,
            ),
            ToyProblem::unit_circle(),
        ),
        Scenario::ForbiddenStart => {
            let mus = if args.mu.is_empty() {
                vec![0.2, 0.5, 0.9]
            } else {
                args.mu.clone()
            };
            (
                toy2d::forbidden_start(args.start.unwrap_or((2.5, 2.5)), &mus, &base, args.steps),
                ToyProblem::unit_circle(),
            )
        }
        Scenario::Ema => {
            let betas = if args.beta_w.is_empty() {
                vec![0.0, 0.9]
            } else {
                args.beta_w.clone()
            };
            (
                toy2d::ema_scenario(
                    args.start.unwrap_or(toy2d::EMA_START),
                    &betas,
                    &base,
                    args.steps,
                ),
                ToyProblem::two_circles(),
            )
        }
        Scenario::AgaVsConga => (
            toy2d::aga_vs_conga(args.start.unwrap_or((2.5, 2.5)), &base, args.steps),
            ToyProblem::unit_circle(),
        ),
    };
    let prefix = Scenario::to_possible_value(&args.scenario).expect("named scenario");
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    for run in &runs {
        let path = args
            .out_dir
            .join(format!("{}_{}.csv", prefix.get_name(), run.label));
        let mut w = create(&path)?;
        write_trajectory_csv(&run.rows, &mut w)?;
        w.flush()?;
        let last = run.last();
        println!(
            "{}  v {:.6}  w {:.3e}  circle {}",
            path.display(),
            last.v,
            last.w,
            prob.active_circle((last.x, last.y)) + 1
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p, HYPER_KEYS)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Solve(a) => cmd_solve(a, &file),
        Command::Bench(a) => cmd_bench(a, &file),
        Command::Gen(a) => cmd_gen(a),
        Command::Toy2d(a) => cmd_toy2d(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn defaults_resolve_to_library_defaults() {
        let r = HyperArgs::default()
            .resolve(&ConfigFile::default(), 0)
            .unwrap();
        assert_eq!(r.evolution, EvolutionConfig::default());
        assert_eq!(r.optimizer, OptimizerConfig::default());
        assert_eq!(r.schedules, Schedules::default());
    }

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file = ConfigFile::parse(
            "epochs = 300\nn-agents = 7\nmu-preset = narrow\n",
            HYPER_KEYS,
        )
        .unwrap();
        let args = HyperArgs {
            n_agents: Some(3),
            ..HyperArgs::default()
        };
        let r = args.resolve(&file, 5).unwrap();
        assert_eq!(r.evolution.epochs, 300);
        assert_eq!(r.evolution.n_agents, 3);
        assert_eq!((r.evolution.mu_lo, r.evolution.mu_hi), (0.2, 0.8));
        assert_eq!(r.evolution.n_generations, 2);
        assert_eq!(r.evolution.seed, 5);
    }
}

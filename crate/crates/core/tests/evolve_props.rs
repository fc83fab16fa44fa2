use conga::evolve::{generation_seed, init_population, run_epoch};
use conga::knapsack::{is_feasible, pack_overweight, pack_value, KnapsackInstance};
use conga::{solve, EvolutionConfig, Execution, OptimizerConfig, Schedules};
use proptest::collection::vec;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = KnapsackInstance> {
    (3usize..=20)
        .prop_flat_map(|n| (vec(1u32..=100, n), vec(1u32..=50, n), 0.2..0.8f64))
        .prop_map(|(v, w, r)| {
            let cap = (r * w.iter().sum::<u32>() as f64).round();
            KnapsackInstance::new(
                "e",
                v.into_iter().map(f64::from).collect(),
                w.into_iter().map(f64::from).collect(),
                cap,
            )
            .unwrap()
        })
}

fn small(seed: u64) -> EvolutionConfig {
    EvolutionConfig {
        n_agents: 8,
        epochs: 150,
        seed,
        ..EvolutionConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn report_is_feasible_and_consistent(inst in instance(), seed in any::<u64>()) {
        let rep = solve(&inst, &small(seed), &OptimizerConfig::default(), &Schedules::default()).unwrap();
        prop_assert!(is_feasible(&inst, &rep.best_packing));
        prop_assert_eq!(pack_value(&inst, &rep.best_packing), rep.best_value);
        prop_assert!(pack_overweight(&inst, &rep.best_packing) <= 0.0);
        let cumulative: Vec<f64> = rep.generations.iter().map(|g| g.cumulative_best).collect();
        prop_assert!(cumulative.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(*cumulative.last().unwrap(), rep.best_value);
    }

    #[test]
    fn agent_best_never_drops(inst in instance(), seed in any::<u64>()) {
        let cfg = small(seed);
        let mut agents = init_population(&inst, &cfg, (cfg.mu_lo, cfg.mu_hi), generation_seed(seed, 0));
        let sched = Schedules::default();
        let opt = OptimizerConfig::default();
        let mut prev: Vec<f64> = agents.iter().map(|a| a.best_value).collect();
        for epoch in 0..100 {
            run_epoch(&mut agents, &inst, epoch, &sched, &opt, Execution::Sequential);
            for (a, p) in agents.iter().zip(&prev) {
                prop_assert!(a.best_value >= *p);
                prop_assert!(is_feasible(&inst, &a.best_packing));
            }
            prev = agents.iter().map(|a| a.best_value).collect();
        }
    }

    #[test]
    fn worker_count_does_not_change_result(inst in instance(), seed in any::<u64>()) {
        let opt = OptimizerConfig::default();
        let sched = Schedules::default();
        let seq = solve(&inst, &EvolutionConfig { execution: Execution::Sequential, ..small(seed) }, &opt, &sched).unwrap();
        for workers in [1, 3] {
            let par = conga::par::with_workers(workers, || {
                solve(&inst, &EvolutionConfig { execution: Execution::Parallel, ..small(seed) }, &opt, &sched).unwrap()
            });
            prop_assert_eq!(&par.best_packing, &seq.best_packing);
            prop_assert_eq!(par.best_value.to_bits(), seq.best_value.to_bits());
            prop_assert_eq!(par.best_mu.to_bits(), seq.best_mu.to_bits());
        }
    }

    #[test]
    fn evolved_mu_range_stays_in_bounds(inst in instance(), seed in any::<u64>()) {
        let cfg = small(seed);
        let rep = solve(&inst, &cfg, &OptimizerConfig::default(), &Schedules::default()).unwrap();
        prop_assert_eq!(rep.generations[0].mu_range, (cfg.mu_lo, cfg.mu_hi));
        let (lo, hi) = rep.generations[1].mu_range;
        prop_assert!(lo >= cfg.mu_floor);
        prop_assert!(lo <= hi);
        prop_assert!(hi <= cfg.mu_hi * cfg.frac);
    }
}

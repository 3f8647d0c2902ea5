use hlouvain_core::bayesopt::{tune, TunerConfig};
use hlouvain_core::habcd::{generate, GenParams, WcdModel};
use hlouvain_core::modularity::{EtaWeights, ObjectiveConfig};

fn instance() -> hlouvain_core::hypercore::Hypergraph {
    let params = GenParams {
        n: 120,
        community_range: (20, 40),
        noise: 0.3,
        wcd_model: WcdModel::Strict,
        seed: 17,
        ..GenParams::default()
    };
    generate(&params).unwrap().0
}

#[test]
fn trace_is_reproducible() {
    let h = instance();
    let cfg = ObjectiveConfig::new(EtaWeights::strict());
    let tcfg = TunerConfig {
        seeds: (1..=4).collect(),
        master_seed: 9,
        ..TunerConfig::default()
    };
    let a = tune(&h, &cfg, &tcfg).unwrap();
    let b = tune(&h, &cfg, &tcfg).unwrap();
    assert_eq!(a.trace_csv(), b.trace_csv());
    assert_eq!(a.best_partition, b.best_partition);
    assert!(a.evaluations.len() >= 10);
    let best_mean = a.evaluations.iter().map(|e| e.mean_q).fold(f64::NEG_INFINITY, f64::max);
    let best_single = a
        .evaluations
        .iter()
        .flat_map(|e| e.per_seed.iter().copied())
        .fold(f64::NEG_INFINITY, f64::max);
    assert!(a.best_q_h >= best_single);
    assert!(a.best_q_h >= best_mean);
}

#[test]
fn larger_budgets_never_do_worse() {
    let h = instance();
    let cfg = ObjectiveConfig::new(EtaWeights::strict());
    let mut previous = f64::NEG_INFINITY;
    let mut previous_trace = String::new();
    for budget in [10, 15, 20] {
        let tcfg = TunerConfig {
            min_evaluations: budget,
            seeds: (1..=4).collect(),
            master_seed: 3,
            ..TunerConfig::default()
        };
        let result = tune(&h, &cfg, &tcfg).unwrap();
        let trace = result.trace_csv();
        assert!(trace.starts_with(&previous_trace));
        assert!(result.best_q_h >= previous - 1e-12);
        previous = result.best_q_h;
        previous_trace = trace;
    }
}

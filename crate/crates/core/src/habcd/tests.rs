use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::modularity::{edge_composition, hypergraph_modularity, EtaWeights, ObjectiveConfig};

fn approx(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
}

#[test]
fn wcd_standard_models() {
    let third = 1.0 / 3.0;
    assert!(approx(&wcd_weights(&WcdModel::Majority, 5).unwrap(), &[third, third, third]));
    assert!(approx(&wcd_weights(&WcdModel::Linear, 5).unwrap(), &[0.25, third, 5.0 / 12.0]));
    assert!(approx(&wcd_weights(&WcdModel::Strict, 4).unwrap(), &[0.0, 1.0]));
    for d in 2..=9 {
        for model in [WcdModel::Majority, WcdModel::Linear, WcdModel::Strict] {
            let w = wcd_weights(&model, d).unwrap();
            assert_eq!(w.len(), d - d / 2);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn wcd_custom_rows_are_checked() {
    let mut rows = BTreeMap::new();
    rows.insert(5, vec![1.0, 2.0, 7.0]);
    assert!(approx(&wcd_weights(&WcdModel::Custom(rows.clone()), 5).unwrap(), &[0.1, 0.2, 0.7]));
    assert!(wcd_weights(&WcdModel::Custom(rows.clone()), 4).is_err());
    rows.insert(3, vec![0.5]);
    assert!(wcd_weights(&WcdModel::Custom(rows), 3).is_err());
}

#[test]
fn powerlaw_degenerate_and_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        assert_eq!(sample_powerlaw(2.5, 5, 5, &mut rng).unwrap(), 5);
    }
    let law = PowerLaw::new(2.0, 3, 17).unwrap();
    assert!((0..10_000).all(|_| (3..=17).contains(&law.sample(&mut rng))));
    assert!(PowerLaw::new(1.0, 1, 5).is_err());
    assert!(PowerLaw::new(2.0, 6, 5).is_err());
}

#[test]
fn powerlaw_endpoint_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (lo, hi, exponent) = (2, 4, 2.5);
    let law = PowerLaw::new(exponent, lo, hi).unwrap();
    let mut counts = [0usize; 3];
    for _ in 0..1_000_000 {
        counts[law.sample(&mut rng) - lo] += 1;
    }
    let expected = (hi as f64 / lo as f64).powf(exponent);
    let observed = counts[0] as f64 / counts[2] as f64;
    assert!((observed / expected - 1.0).abs() < 0.1, "{observed} vs {expected}");
}

#[test]
fn noiseless_strict_edges_are_pure() {
    let params = GenParams {
        noise: 0.0,
        seed: 3,
        ..GenParams::default()
    };
    let (h, truth) = generate(&params).unwrap();
    assert_eq!(h.node_count(), 300);
    assert_eq!(truth.realized_noise, 0.0);
    for edge in h.edges() {
        let c = truth.partition.community(edge.members()[0]);
        assert!(edge.members().iter().all(|&v| truth.partition.community(v) == c));
    }
    let cfg = ObjectiveConfig::new(EtaWeights::strict());
    assert!(hypergraph_modularity(&h, &truth.partition, &cfg).unwrap() > 0.0);
}

#[test]
fn full_noise_is_all_background() {
    let params = GenParams {
        noise: 1.0,
        seed: 4,
        ..GenParams::default()
    };
    let (h, truth) = generate(&params).unwrap();
    assert_eq!(truth.realized_noise, 1.0);
    assert_eq!(truth.background_edges, h.edge_count());
}

#[test]
fn community_sizes_respect_range() {
    for seed in 0..20 {
        let params = GenParams {
            seed,
            ..GenParams::default()
        };
        let (h, truth) = generate(&params).unwrap();
        assert_eq!(h.node_count(), params.n);
        let blocks = truth.partition.communities();
        let (lo, hi) = params.community_range;
        assert_eq!(blocks.iter().map(Vec::len).sum::<usize>(), params.n);
        assert!(blocks.iter().all(|b| b.len() + 1 >= lo && b.len() <= hi));
        assert!(h.edges().iter().all(|e| (2..=5).contains(&e.size())));
    }
}

#[test]
fn moderate_noise_keeps_most_community_edges_pure() {
    let params = GenParams {
        noise: 0.15,
        seed: 5,
        ..GenParams::default()
    };
    let (h, truth) = generate(&params).unwrap();
    let table = edge_composition(&h, &truth.partition);
    let community: usize = table.rows.iter().filter(|r| r.is_community_edge()).map(|r| r.count).sum();
    let pure: usize = table.rows.iter().filter(|r| r.c == r.d).map(|r| r.count).sum();
    assert!(2 * pure > community, "{pure} of {community}");
}

#[test]
fn generation_is_deterministic() {
    let params = GenParams {
        seed: 11,
        wcd_model: WcdModel::Linear,
        ..GenParams::default()
    };
    assert_eq!(generate(&params).unwrap(), generate(&params).unwrap());
}

#[test]
fn infeasible_ranges_are_rejected() {
    let params = GenParams {
        community_range: (60, 40),
        ..GenParams::default()
    };
    assert!(matches!(generate(&params), Err(Error::Infeasible(_))));
    let params = GenParams {
        size_distribution: vec![(2, 0.5), (3, 0.4)],
        ..GenParams::default()
    };
    assert!(generate(&params).is_err());
}

#[test]
fn local_noise_lands_in_smallest_communities() {
    let params = GenParams {
        noise: 0.2,
        seed: 9,
        ..GenParams::default()
    };
    let (h, truth) = generate(&params).unwrap();
    let (h2, truth2) = inject_local_noise(&h, &truth, 35, 5, 1).unwrap();
    assert_eq!(h2.edge_count(), h.edge_count() + 35);
    assert_eq!(truth2.background_edges, truth.background_edges + 35);
    let blocks = truth.partition.communities();
    let mut by_size: Vec<usize> = (0..blocks.len()).collect();
    by_size.sort_by_key(|&i| (blocks[i].len(), i));
    let small = [by_size[0], by_size[1]];
    for edge in &h2.edges()[h.edge_count()..] {
        assert_eq!(edge.size(), 5);
        assert!(edge.members().iter().all(|&v| small.contains(&truth.partition.community(v))));
        assert!(edge.distinct().count() == 5);
    }
}

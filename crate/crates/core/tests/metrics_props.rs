mod common;

use common::*;
use hlouvain_core::metrics::{ami_labels, suggest_tau, AmiNormalization};
use hlouvain_core::modularity::{CompositionRow, CompositionTable};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn ami_matches_direct_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let a = random_labels(&mut rng, 200, 4);
        let b = random_labels(&mut rng, 200, 4);
        let got = ami_labels(&a, &b, AmiNormalization::Arithmetic).unwrap();
        let want = literal_ami(&a, &b);
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
}

fn labels_pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (2usize..60).prop_flat_map(|n| (prop::collection::vec(0usize..6, n), prop::collection::vec(0usize..6, n)))
}

proptest! {
    #[test]
    fn ami_is_symmetric((a, b) in labels_pair()) {
        let x = ami_labels(&a, &b, AmiNormalization::Arithmetic).unwrap();
        let y = ami_labels(&b, &a, AmiNormalization::Arithmetic).unwrap();
        prop_assert!((x - y).abs() <= 1e-12);
    }

    #[test]
    fn ami_ignores_label_names((a, b) in labels_pair(), shift in 1usize..40) {
        let renamed: Vec<usize> = a.iter().map(|&l| (5 - l) * 13 + shift).collect();
        let x = ami_labels(&a, &b, AmiNormalization::Arithmetic).unwrap();
        let y = ami_labels(&renamed, &b, AmiNormalization::Arithmetic).unwrap();
        prop_assert!((x - y).abs() <= 1e-12);
    }

    #[test]
    fn ami_is_at_most_one((a, b) in labels_pair()) {
        prop_assert!(ami_labels(&a, &b, AmiNormalization::Arithmetic).unwrap() <= 1.0 + 1e-12);
    }

    #[test]
    fn tau_suggestion_is_scale_invariant(
        cells in prop::collection::vec((2usize..7, 1usize..7, 1usize..50), 1..12),
        scale in 0.01f64..100.0,
    ) {
        let rows: Vec<CompositionRow> = cells
            .iter()
            .filter(|(d, c, _)| c <= d)
            .map(|&(d, c, k)| CompositionRow { d, c, count: k, frequency: k as f64 })
            .collect();
        let scaled: Vec<CompositionRow> = rows
            .iter()
            .map(|r| CompositionRow { frequency: r.frequency * scale, ..*r })
            .collect();
        let a = suggest_tau(&CompositionTable::from_rows(rows));
        let b = suggest_tau(&CompositionTable::from_rows(scaled));
        prop_assert_eq!(a.suggested, b.suggested);
    }
}

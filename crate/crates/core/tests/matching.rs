use std::collections::BTreeSet;

use proptest::prelude::*;

use hyperham::matching::{
    build_aux_bipartite, estimate_mindeg_probability, ordered_matching_from_tuple, sample_matching_extension,
    PermutationTuple,
};
use hyperham::models::{gen_binomial, gen_complete};
use hyperham::oracle::{count_matching_extensions, enumerate_matching_extensions, OracleConfig};
use hyperham::{KGraph, PartiteView};

fn parts(k: usize, m: usize) -> Vec<Vec<usize>> {
    (0..k).map(|i| (i * m..(i + 1) * m).collect()).collect()
}

fn shuffled_prefix(view: &PartiteView<'_>, len: usize, seed: u64) -> PermutationTuple {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    PermutationTuple::new(
        (0..len)
            .map(|i| {
                let mut p = view.part(i).to_vec();
                p.shuffle(&mut rng);
                p
            })
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn aux_graph_matches_definition(seed in 0u64..5000, p in 0.2f64..1.0, k in 3usize..5, m in 1usize..6) {
        let h = gen_binomial(k * m, k, p, seed).unwrap();
        let view = PartiteView::equipartition(&h, parts(k, m)).unwrap();
        let tuple = shuffled_prefix(&view, k - 1, seed);
        let aux = build_aux_bipartite(&view, &tuple).unwrap();
        for j in 0..m {
            prop_assert_eq!(&aux.left[j], &tuple.column(j));
            for (c, &v) in aux.right.iter().enumerate() {
                let mut e = aux.left[j].clone();
                e.push(v);
                prop_assert_eq!(aux.adjacency.get(j, c), h.has_edge(&e));
            }
        }
        prop_assert!(aux.min_left_degree() >= view.min_codegree().unwrap());
    }

    #[test]
    fn sampled_extensions_are_enumerated(seed in 0u64..5000, p in 0.5f64..1.0, m in 2usize..4, r in 0usize..2) {
        let h = gen_binomial(3 * m, 3, p, seed).unwrap();
        let view = PartiteView::equipartition(&h, parts(3, m)).unwrap();
        let prefix = shuffled_prefix(&view, r, seed);
        let all: BTreeSet<Vec<Vec<usize>>> = enumerate_matching_extensions(&view, prefix.perms(), &OracleConfig::default())
            .unwrap()
            .into_iter()
            .collect();
        prop_assert_eq!(all.len() as u128, count_matching_extensions(&view, prefix.perms(), &OracleConfig::default()).unwrap());
        for s in 0..20u64 {
            if let Some(ext) = sample_matching_extension(&view, &prefix, seed * 100 + s, 5).unwrap() {
                ordered_matching_from_tuple(&view, &ext.tuple).unwrap();
                prop_assert!(all.contains(ext.tuple.perms()));
            }
        }
        if all.is_empty() {
            prop_assert!(sample_matching_extension(&view, &prefix, seed, 5).unwrap().is_none());
        }
    }

    #[test]
    fn estimate_is_deterministic(seed in 0u64..5000) {
        let h = gen_binomial(30, 3, 0.8, seed).unwrap();
        let view = PartiteView::equipartition(&h, parts(3, 10)).unwrap();
        let prefix = shuffled_prefix(&view, 1, seed);
        let a = estimate_mindeg_probability(&view, &prefix, 0.1, 50, seed, 1).unwrap();
        let b = estimate_mindeg_probability(&view, &prefix, 0.1, 50, seed, 1).unwrap();
        let c = estimate_mindeg_probability(&view, &prefix, 0.1, 50, seed, 3).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
    }
}

#[test]
fn complete_view_always_succeeds() {
    let h = gen_complete(12, 3).unwrap();
    let view = PartiteView::equipartition(&h, parts(3, 4)).unwrap();
    let prefix = shuffled_prefix(&view, 1, 0);
    let est = estimate_mindeg_probability(&view, &prefix, 0.3, 40, 1, 1).unwrap();
    assert_eq!(est.probability, 1.0);
    for seed in 0..10 {
        assert_eq!(sample_matching_extension(&view, &PermutationTuple::empty(), seed, 1).unwrap().unwrap().attempts, 1);
    }
}

#[test]
fn vacuous_threshold_reports_one() {
    let h = KGraph::empty(3, 12).unwrap();
    let view = PartiteView::equipartition(&h, parts(3, 4)).unwrap();
    let est = estimate_mindeg_probability(&view, &shuffled_prefix(&view, 1, 0), 0.1, 10, 1, 1).unwrap();
    assert!(est.vacuous);
    assert_eq!(est.probability, 1.0);
}

#[test]
fn dense_views_extend_quickly() {
    let (m, need) = (20, 15);
    let mut successes = 0;
    let mut seed = 0u64;
    let mut instances = 0;
    while instances < 100 {
        seed += 1;
        assert!(seed < 2000, "too few views reach δ* >= {need}");
        let h = gen_binomial(3 * m, 3, 0.95, seed).unwrap();
        let view = PartiteView::equipartition(&h, parts(3, m)).unwrap();
        if view.min_codegree().unwrap() < need {
            continue;
        }
        instances += 1;
        if sample_matching_extension(&view, &PermutationTuple::empty(), seed, 3).unwrap().is_some() {
            successes += 1;
        }
    }
    assert!(successes >= 95, "{successes}/100");
}

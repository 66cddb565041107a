use std::collections::HashSet;

use itertools::Itertools;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use hyperham::formulas::psi;
use hyperham::hypergraph::{canonical_cycle, is_degenerate_shape, VertexSequence};
use hyperham::models::{gen_binomial, gen_complete};
use hyperham::oracle::{count_ham_ell_cycles, find_ell_path_constrained, OracleConfig, SearchBudget};
use hyperham::KGraph;

/// Distinct edge sets over all cyclic orderings, by plain permutation enumeration.
fn brute_force_cycles(h: &KGraph, ell: usize) -> usize {
    let (n, k) = (h.n(), h.k());
    let s = k - ell;
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    for ord in (0..n).permutations(n) {
        let mut edges: Vec<Vec<usize>> = (0..n / s)
            .map(|w| (0..k).map(|i| ord[(w * s + i) % n]).sorted().collect())
            .collect();
        if edges.iter().all(|e| h.has_edge(e)) {
            edges.sort();
            edges.dedup();
            if edges.len() == n / s {
                seen.insert(edges);
            }
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn census_matches_brute_force(seed in 0u64..1000, p in 0.5f64..1.0, shape in 0usize..4) {
        let (n, k, ell) = [(6, 3, 1), (6, 3, 0), (8, 3, 1), (7, 2, 1)][shape];
        let h = gen_binomial(n, k, p, seed).unwrap();
        let census = count_ham_ell_cycles(&h, ell, &OracleConfig::default()).unwrap();
        prop_assert_eq!(census.distinct_cycles as usize, brute_force_cycles(&h, ell));
    }

    #[test]
    fn census_is_worker_invariant(seed in 0u64..1000) {
        let h = gen_binomial(8, 3, 0.8, seed).unwrap();
        let one = count_ham_ell_cycles(&h, 1, &OracleConfig::default()).unwrap();
        let four = count_ham_ell_cycles(&h, 1, &OracleConfig::default().with_workers(4)).unwrap();
        prop_assert_eq!(one, four);
    }

    #[test]
    fn canonical_form_ignores_stride_rotation_and_reflection(
        seed in 0u64..1000,
        shape in 0usize..3,
        turns in 0usize..6,
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let (n, k, ell) = [(12, 3, 1), (12, 4, 1), (12, 4, 2)][shape];
        let s = k - ell;
        let mut ord: Vec<usize> = (0..n).collect();
        ord.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let base = canonical_cycle(&VertexSequence::cyclic(ord.clone()).unwrap(), k, ell).unwrap();
        let mut rotated = ord.clone();
        rotated.rotate_left((turns * s) % n);
        let mut reflected = ord.clone();
        reflected.rotate_left(k);
        reflected.reverse();
        for other in [rotated, reflected] {
            let c = canonical_cycle(&VertexSequence::cyclic(other).unwrap(), k, ell).unwrap();
            prop_assert_eq!(&c, &base);
        }
    }
}

#[test]
fn reliable_closed_form_matches_census() {
    let cfg = OracleConfig::default();
    let mut checked = 0;
    for n in 3..=9 {
        for k in 2..=n.min(8) {
            for ell in 0..k {
                let s = k - ell;
                if n % s != 0 || n / s < 2 {
                    continue;
                }
                let closed = psi(n, k, ell).unwrap();
                assert_eq!(closed.reliable, !is_degenerate_shape(n, k, ell));
                if !closed.reliable {
                    continue;
                }
                let census = count_ham_ell_cycles(&gen_complete(n, k).unwrap(), ell, &cfg).unwrap();
                let value = closed.to_integer().and_then(|v| v.to_u64());
                assert_eq!(value, Some(census.distinct_cycles), "n={n} k={k} ell={ell}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 15, "only {checked} reliable shapes");
}

#[test]
fn acceptance_shapes_are_reliable() {
    for (n, k, ell) in [(6, 3, 1), (9, 3, 0), (8, 4, 2), (6, 2, 1)] {
        assert!(psi(n, k, ell).unwrap().reliable);
    }
}

/// Whether some Hamiltonian ℓ-path starts with `first` and ends with `last`, by scanning
/// orderings of the interior.
fn brute_force_path(f: &KGraph, ell: usize, first: &[usize], last: &[usize]) -> bool {
    let (n, k) = (f.n(), f.k());
    let s = k - ell;
    let inner: Vec<usize> = (0..n).filter(|v| !first.contains(v) && !last.contains(v)).collect();
    inner.iter().copied().permutations(inner.len()).any(|mid| {
        let ord: Vec<usize> = first.iter().chain(&mid).chain(last).copied().collect();
        (0..=n - k).step_by(s).all(|a| f.has_edge(&ord[a..a + k]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn constrained_path_search_agrees_with_scan(seed in 0u64..10_000, p in 0.3f64..0.9, shape in 0usize..3) {
        let (n, ell) = [(7, 1), (9, 1), (9, 0)][shape];
        let f = gen_binomial(n, 3, p, seed).unwrap();
        let edges: Vec<Vec<usize>> = f.edges().collect();
        let pair = edges
            .iter()
            .flat_map(|a| edges.iter().map(move |b| (a, b)))
            .find(|(a, b)| a.iter().all(|v| !b.contains(v)));
        if let Some((a, b)) = pair {
            let mut last = b.clone();
            last.reverse();
            let found = find_ell_path_constrained(&f, ell, a, &last, SearchBudget::unlimited()).unwrap();
            prop_assert_eq!(found.is_some(), brute_force_path(&f, ell, a, &last));
            if let Some(path) = found {
                prop_assert!(path.violations(&f).is_empty());
                prop_assert_eq!(&path.ordering()[..3], &a[..]);
                prop_assert_eq!(&path.ordering()[n - 3..], &last[..]);
            }
        }
    }
}

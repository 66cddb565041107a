use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::{EllPath, KGraph, PartiteView};
use crate::matching::{ordered_matching_from_tuple, sample_matching_extension, OrderedMatching, PermutationTuple};
use crate::rng::{self, Stage};

/// An ordered family of vertex-disjoint ℓ-paths of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathSystem {
    pub paths: Vec<EllPath>,
    /// Union of the paths' vertices, sorted.
    pub covered: Vec<usize>,
}

impl PathSystem {
    pub fn new(paths: Vec<EllPath>) -> Result<Self> {
        if let Some(first) = paths.first() {
            if paths.iter().any(|p| p.len() != first.len() || p.k() != first.k() || p.ell() != first.ell()) {
                return Err(Error::arg("paths differ in length or shape"));
            }
        }
        let covered: Vec<usize> = paths
            .iter()
            .flat_map(|p| p.ordering().iter().copied())
            .sorted_unstable()
            .collect();
        if covered.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::arg("paths are not vertex-disjoint"));
        }
        Ok(PathSystem { paths, covered })
    }

    pub fn m(&self) -> usize {
        self.paths.len()
    }
}

/// A path system with the matchings it was chained from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystemBuild {
    pub system: PathSystem,
    /// The ordered matching of each step.
    pub steps: Vec<OrderedMatching>,
    /// Extension attempts summed over steps.
    pub attempts: usize,
}

/// Chains matchings across the parts of `view` into `m` ℓ-paths.
///
/// Step `s` (from 0) covers parts `s(k-ℓ), …, s(k-ℓ)+k-1`. Its first ℓ permutations are the
/// last ℓ of step `s-1`, so consecutive edges `e^{s-1}_j, e^s_j` share exactly the ℓ
/// vertices in the overlapping parts. Path `j` reads one vertex per part at index `j`.
pub fn build_path_system(
    h: &KGraph,
    view: &PartiteView<'_>,
    ell: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<PathSystemBuild> {
    let k = h.k();
    if !std::ptr::eq(view.base(), h) && view.base() != h {
        return Err(Error::arg("the view is over a different host graph"));
    }
    if ell + 2 > k {
        return Err(Error::arg(format!("path systems need ℓ <= k - 2, got ℓ = {ell}")));
    }
    let s = k - ell;
    let parts = view.num_parts();
    let m = view
        .part_size()
        .ok_or_else(|| Error::arg("the view is not an equipartition"))?;
    if parts < k || (parts - ell) % s != 0 {
        return Err(Error::arg(format!(
            "{parts} parts; need at least k = {k} and parts ≡ ℓ (mod {s})"
        )));
    }
    let steps = (parts - ell) / s;

    let mut perm_of_part: Vec<Vec<usize>> = Vec::with_capacity(parts);
    let mut matchings = Vec::with_capacity(steps);
    let mut attempts = 0;
    for step in 0..steps {
        let first = step * s;
        let sub = view.select(&(first..first + k).collect::<Vec<_>>())?;
        let prefix = PermutationTuple::new(perm_of_part[first..].to_vec())?;
        let ext = sample_matching_extension(&sub, &prefix, rng::child_seed(seed, Stage::Extension, step as u64), max_attempts)?
            .ok_or_else(|| Error::StageFailed {
                stage: "path-system step",
                index: step + 1,
                detail: format!("no matching extension in {max_attempts} attempts"),
            })?;
        attempts += ext.attempts;
        matchings.push(ordered_matching_from_tuple(&sub, &ext.tuple)?);
        perm_of_part.extend(ext.tuple.into_perms().into_iter().skip(prefix.len()));
    }

    let paths = (0..m)
        .map(|j| EllPath::new(perm_of_part.iter().map(|p| p[j]).collect(), k, ell))
        .collect::<Result<Vec<_>>>()?;
    for (j, p) in paths.iter().enumerate() {
        if let Some(&a) = p.violations(h).first() {
            return Err(Error::ContractViolation(format!("path {j} has a non-edge window at {a}")));
        }
    }
    Ok(PathSystemBuild {
        system: PathSystem::new(paths)?,
        steps: matchings,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gen_complete;

    fn parts(count: usize, m: usize) -> Vec<Vec<usize>> {
        (0..count).map(|i| (i * m..(i + 1) * m).collect()).collect()
    }

    #[test]
    fn complete_graph_paths() {
        let h = gen_complete(30, 3).unwrap();
        let view = PartiteView::equipartition(&h, parts(15, 2)).unwrap();
        let built = build_path_system(&h, &view, 1, 4, 5).unwrap();
        assert_eq!(built.system.m(), 2);
        assert_eq!(built.steps.len(), 7);
        for p in &built.system.paths {
            assert_eq!(p.len(), 15);
            for (i, &v) in p.ordering().iter().enumerate() {
                assert_eq!(view.part_of(v), Some(i));
            }
        }
        // Consecutive step edges overlap in the shared part.
        for w in built.steps.windows(2) {
            for j in 0..2 {
                assert_eq!(w[0].trailing(1)[j][..], w[1].edges[j][..1]);
            }
        }
    }

    #[test]
    fn ell_zero_steps_are_independent() {
        let h = gen_complete(18, 3).unwrap();
        let view = PartiteView::equipartition(&h, parts(6, 3)).unwrap();
        let built = build_path_system(&h, &view, 0, 1, 5).unwrap();
        assert_eq!(built.steps.len(), 2);
        assert_eq!(built.system.paths[0].edge_count(), 2);
    }

    #[test]
    fn misaligned_part_count() {
        let h = gen_complete(16, 3).unwrap();
        let view = PartiteView::equipartition(&h, parts(8, 2)).unwrap();
        assert!(build_path_system(&h, &view, 1, 0, 5).is_err());
    }

    #[test]
    fn step_failure_names_step() {
        let h = KGraph::empty(3, 10).unwrap();
        let view = PartiteView::equipartition(&h, parts(5, 2)).unwrap();
        match build_path_system(&h, &view, 1, 0, 3) {
            Err(Error::StageFailed { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}

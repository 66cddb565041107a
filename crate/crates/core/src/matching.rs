//! Random permutation tuples over a k-partite view, the auxiliary bipartite graph `B_π`,
//! and matching extension by augmenting paths.
//!
//! A permutation of part `i` is stored as the list of its vertices in index order:
//! `perm[j]` is `π_i(j)`. A tuple `(π_1, …, π_k)` induces the edges
//! `{π_1(j), …, π_k(j)}` for `j < m`.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::bipartite::{aux_incidence, BipartiteMatrix};
use crate::error::{Error, Result};
use crate::hypergraph::PartiteView;
use crate::oracle::run_in_pool;
use crate::rng::{self, Stage};

/// Bijections `[m] → V_i` for consecutive parts `V_1, V_2, …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationTuple {
    perms: Vec<Vec<usize>>,
}

impl PermutationTuple {
    pub fn empty() -> Self {
        PermutationTuple { perms: Vec::new() }
    }

    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(first) = perms.first() {
            if perms.iter().any(|p| p.len() != first.len()) {
                return Err(Error::arg("permutations of unequal length"));
            }
        }
        Ok(PermutationTuple { perms })
    }

    /// Number of permutations in the tuple.
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn perm(&self, i: usize) -> &[usize] {
        &self.perms[i]
    }

    pub fn into_perms(self) -> Vec<Vec<usize>> {
        self.perms
    }

    /// The tuple's vertices at index `j`, one per permutation.
    pub fn column(&self, j: usize) -> Vec<usize> {
        self.perms.iter().map(|p| p[j]).collect()
    }

    /// Checks that permutation `i` is a bijection onto part `i` of `view`.
    pub fn check_against(&self, view: &PartiteView<'_>) -> Result<()> {
        if self.perms.len() > view.num_parts() {
            return Err(Error::arg(format!(
                "{} permutations for {} parts",
                self.perms.len(),
                view.num_parts()
            )));
        }
        for (i, perm) in self.perms.iter().enumerate() {
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            let mut part = view.part(i).to_vec();
            part.sort_unstable();
            if sorted != part {
                return Err(Error::arg(format!("permutation {i} is not a bijection onto part {i}")));
            }
        }
        Ok(())
    }
}

/// `B_π(H)`: the matched (k-1)-sets `M_π` against the last part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxBipartite {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<usize>,
    pub adjacency: BipartiteMatrix,
}

impl AuxBipartite {
    pub fn min_left_degree(&self) -> usize {
        self.adjacency.min_left_degree()
    }

    pub fn min_right_degree(&self) -> usize {
        self.adjacency.min_right_degree()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.min_degree()
    }
}

fn check_view(view: &PartiteView<'_>) -> Result<usize> {
    let k = view.base().k();
    if view.num_parts() != k {
        return Err(Error::arg(format!(
            "need a view with exactly k = {k} parts, got {}",
            view.num_parts()
        )));
    }
    view.part_size()
        .ok_or_else(|| Error::arg("the view is not an equipartition"))
}

/// Builds `B_π` for a tuple covering parts `1, …, k-1`.
pub fn build_aux_bipartite(view: &PartiteView<'_>, prefix: &PermutationTuple) -> Result<AuxBipartite> {
    let m = check_view(view)?;
    let k = view.base().k();
    if prefix.len() != k - 1 {
        return Err(Error::arg(format!(
            "B_π needs k - 1 = {} permutations, got {}",
            k - 1,
            prefix.len()
        )));
    }
    prefix.check_against(view)?;
    let left: Vec<Vec<usize>> = (0..m).map(|j| prefix.column(j)).collect();
    let right = view.part(k - 1).to_vec();
    let adjacency = aux_incidence(view.base(), left.iter().map(Vec::as_slice), &right)?;
    Ok(AuxBipartite {
        left,
        right,
        adjacency,
    })
}

fn shuffled(part: &[usize], rng: &mut impl rand::Rng) -> Vec<usize> {
    let mut perm = part.to_vec();
    perm.shuffle(rng);
    perm
}

/// Outcome of [`estimate_mindeg_probability`].
#[derive(Clone, Debug, PartialEq)]
pub struct MinDegreeEstimate {
    pub trials: usize,
    pub successes: usize,
    pub probability: f64,
    /// `δ*_{k-1}` of the view.
    pub delta_star: usize,
    /// `(δ - ε) m`, clamped at 0.
    pub threshold: f64,
    /// True when the threshold is 0, so every trial succeeds trivially.
    pub vacuous: bool,
    /// `histogram[d]` counts trials whose `B_π` had minimum degree `d`.
    pub histogram: Vec<usize>,
}

/// Fraction of uniformly random `π_{k-1}` for which `B_π` has minimum degree at least
/// `(δ - ε) m`, where `δ m = δ*_{k-1}(view)`. The prefix fixes parts `1, …, k-2`.
///
/// Trial `i` draws from its own stream `(seed, i)`, so the result does not depend on
/// `workers`.
pub fn estimate_mindeg_probability(
    view: &PartiteView<'_>,
    prefix: &PermutationTuple,
    eps: f64,
    trials: usize,
    seed: u64,
    workers: usize,
) -> Result<MinDegreeEstimate> {
    let m = check_view(view)?;
    let k = view.base().k();
    if trials == 0 {
        return Err(Error::arg("need at least one trial"));
    }
    if !(eps > 0.0) {
        return Err(Error::arg(format!("ε = {eps} must be positive")));
    }
    if prefix.len() != k - 2 {
        return Err(Error::arg(format!(
            "the fixed prefix must cover k - 2 = {} parts, got {}",
            k - 2,
            prefix.len()
        )));
    }
    prefix.check_against(view)?;
    let delta_star = view.min_codegree()?;
    let threshold = (delta_star as f64 - eps * m as f64).max(0.0);
    let vacuous = threshold <= 0.0;

    let trial = |i: usize| -> Result<usize> {
        let mut rng = rng::derive(seed, Stage::MinDegree, i as u64);
        let mut perms = prefix.perms().to_vec();
        perms.push(shuffled(view.part(k - 2), &mut rng));
        let aux = build_aux_bipartite(view, &PermutationTuple { perms })?;
        Ok(aux.min_degree())
    };
    let degrees: Vec<usize> = if workers <= 1 {
        (0..trials).map(trial).collect::<Result<_>>()?
    } else {
        run_in_pool(workers, || (0..trials).into_par_iter().map(trial).collect::<Result<_>>())?
    };

    let mut histogram = vec![0; m + 1];
    for &d in &degrees {
        histogram[d] += 1;
    }
    let successes = degrees.iter().filter(|&&d| d as f64 >= threshold).count();
    Ok(MinDegreeEstimate {
        trials,
        successes,
        probability: successes as f64 / trials as f64,
        delta_star,
        threshold,
        vacuous,
        histogram,
    })
}

/// A completed tuple together with the attempt that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub tuple: PermutationTuple,
    pub attempts: usize,
}

/// Whether some index `j` or some vertex can never be covered, whatever the free
/// permutations are.
fn structurally_blocked(view: &PartiteView<'_>, prefix: &PermutationTuple) -> bool {
    let base = view.base();
    let mut covered = vec![false; base.n()];
    let mut seeds_ok = vec![false; view.part_size().unwrap_or(0)];
    let r = prefix.len();
    let column_keys: Vec<Vec<usize>> = (0..seeds_ok.len())
        .map(|j| {
            let mut c = prefix.column(j);
            c.sort_unstable();
            c
        })
        .collect();
    for e in base.edges().filter(|e| view.is_partite_edge(e)) {
        for &v in &e {
            covered[v] = true;
        }
        if r > 0 {
            let first = e.iter().copied().find(|&v| view.part_of(v) == Some(0)).expect("partite");
            if let Some(j) = prefix.perm(0).iter().position(|&u| u == first) {
                if column_keys[j].iter().all(|v| e.binary_search(v).is_ok()) {
                    seeds_ok[j] = true;
                }
            }
        }
    }
    let uncovered = view.parts().iter().flatten().any(|&v| !covered[v]);
    uncovered || (r > 0 && seeds_ok.contains(&false))
}

/// Completes `prefix` (covering parts `1, …, r` with `r <= k-2`) to a full tuple that
/// induces a perfect matching of the view.
///
/// Each attempt draws the free permutations `π_{r+1}, …, π_{k-1}` uniformly, builds `B_π`
/// and reads `π_k` off a maximum matching. Returns `Ok(None)` after `max_attempts`
/// failures, or at once if some vertex or prefix column lies in no partite edge.
pub fn sample_matching_extension(
    view: &PartiteView<'_>,
    prefix: &PermutationTuple,
    seed: u64,
    max_attempts: usize,
) -> Result<Option<Extension>> {
    let m = check_view(view)?;
    let k = view.base().k();
    if prefix.len() + 2 > k {
        return Err(Error::arg(format!(
            "prefix length {} exceeds k - 2 = {}",
            prefix.len(),
            k - 2
        )));
    }
    prefix.check_against(view)?;
    if structurally_blocked(view, prefix) {
        return Ok(None);
    }
    let mut rng = rng::derive(seed, Stage::Extension, 0);
    for attempt in 1..=max_attempts {
        let mut perms = prefix.perms().to_vec();
        for i in prefix.len()..k - 1 {
            perms.push(shuffled(view.part(i), &mut rng));
        }
        let aux = build_aux_bipartite(view, &PermutationTuple { perms: perms.clone() })?;
        if aux.min_degree() == 0 {
            continue;
        }
        if let Some(assignment) = aux.adjacency.perfect_matching() {
            perms.push(assignment.iter().map(|&j| aux.right[j]).collect());
            let tuple = PermutationTuple { perms };
            debug_assert_eq!(tuple.perm(k - 1).len(), m);
            ordered_matching_from_tuple(view, &tuple)?;
            return Ok(Some(Extension {
                tuple,
                attempts: attempt,
            }));
        }
    }
    Ok(None)
}

/// The perfect matching induced by a full tuple, with edges in index order and vertices
/// of each edge in part order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMatching {
    pub edges: Vec<Vec<usize>>,
}

impl OrderedMatching {
    /// `X_j`: the vertices of `e_j` in the last `ell` parts, in part order.
    pub fn trailing(&self, ell: usize) -> Vec<Vec<usize>> {
        self.edges
            .iter()
            .map(|e| e[e.len() - ell..].to_vec())
            .collect()
    }
}

/// Reads the ordered matching `(e_1, …, e_m)` off a full tuple, checking that every
/// `e_j` is an edge.
pub fn ordered_matching_from_tuple(
    view: &PartiteView<'_>,
    tuple: &PermutationTuple,
) -> Result<OrderedMatching> {
    let m = check_view(view)?;
    let k = view.base().k();
    if tuple.len() != k {
        return Err(Error::ContractViolation(format!(
            "a full tuple has k = {k} permutations, got {}",
            tuple.len()
        )));
    }
    tuple
        .check_against(view)
        .map_err(|e| Error::ContractViolation(e.to_string()))?;
    let edges: Vec<Vec<usize>> = (0..m).map(|j| tuple.column(j)).collect();
    if let Some((j, e)) = edges.iter().enumerate().find(|(_, e)| !view.base().has_edge(e)) {
        return Err(Error::ContractViolation(format!(
            "tuple index {j} gives {e:?}, which is not an edge"
        )));
    }
    Ok(OrderedMatching { edges })
}

//! Immutable k-uniform hypergraphs on the dense vertex range `0..n`.
//!
//! Edges are stored as packed sorted keys ([`SetKey`]) in a hash set for membership
//! tests. A second index from each (k-1)-set to its completions is built on first use
//! and backs every co-degree query.

mod io;
mod key;
mod partite;
mod sequence;

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};

pub use io::{parse_instance, read_instance, write_instance};
pub use key::{SetKey, MAX_UNIFORMITY, MAX_VERTICES};
pub use partite::PartiteView;
pub use sequence::{
    canonical_cycle, is_degenerate_shape, validate_ell_cycle, CanonicalCycle, CycleReport,
    EllCycle, EllPath, VertexSequence,
};

/// A k-uniform hypergraph.
#[derive(Clone, Debug)]
pub struct KGraph {
    k: usize,
    n: usize,
    edges: Vec<SetKey>,
    edge_set: HashSet<SetKey>,
    completions: OnceLock<HashMap<SetKey, Vec<usize>>>,
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for KGraph {}

fn check_shape(k: usize, n: usize) -> Result<()> {
    if !(2..=MAX_UNIFORMITY).contains(&k) {
        return Err(Error::arg(format!(
            "uniformity k = {k} outside 2..={MAX_UNIFORMITY}"
        )));
    }
    if n > MAX_VERTICES {
        return Err(Error::arg(format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    Ok(())
}

impl KGraph {
    /// Builds a k-graph, rejecting edges of the wrong size, out-of-range or repeated
    /// vertices, and duplicate edges.
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        check_shape(k, n)?;
        let mut keys = Vec::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != k {
                return Err(Error::arg(format!("edge {e:?} does not have {k} vertices")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::arg(format!("vertex {v} of edge {e:?} is not below n = {n}")));
            }
            let key = SetKey::from_unsorted(e)
                .ok_or_else(|| Error::arg(format!("edge {e:?} repeats a vertex")))?;
            keys.push(key);
        }
        keys.sort_unstable();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::arg(format!("duplicate edge {:?}", w[0].to_vec())));
        }
        Ok(Self::from_sorted_keys(k, n, keys))
    }

    /// Keys must be sorted, distinct, of size `k` and in range.
    pub(crate) fn from_sorted_keys(k: usize, n: usize, edges: Vec<SetKey>) -> Self {
        let edge_set = edges.iter().copied().collect();
        KGraph {
            k,
            n,
            edges,
            edge_set,
            completions: OnceLock::new(),
        }
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        check_shape(k, n)?;
        Ok(Self::from_sorted_keys(k, n, Vec::new()))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge keys in lexicographic order.
    pub fn edge_keys(&self) -> &[SetKey] {
        &self.edges
    }

    /// Edges as sorted vertex lists, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.edges.iter().map(|e| e.to_vec())
    }

    /// Membership test; the slice may be in any order. Wrong sizes and repeated vertices
    /// are simply not edges.
    pub fn has_edge(&self, e: &[usize]) -> bool {
        e.len() == self.k
            && SetKey::from_unsorted(e).is_some_and(|key| self.edge_set.contains(&key))
    }

    pub fn has_edge_key(&self, key: SetKey) -> bool {
        self.edge_set.contains(&key)
    }

    fn completion_index(&self) -> &HashMap<SetKey, Vec<usize>> {
        self.completions.get_or_init(|| {
            let mut index: HashMap<SetKey, Vec<usize>> = HashMap::new();
            for &e in &self.edges {
                for v in e.iter() {
                    index.entry(e.without(v)).or_default().push(v);
                }
            }
            for list in index.values_mut() {
                list.sort_unstable();
            }
            index
        })
    }

    /// Sorted vertices `v` with `x ∪ {v}` an edge. `x` is a (k-1)-set in any order; other
    /// inputs have no completions.
    pub fn completions(&self, x: &[usize]) -> &[usize] {
        if x.len() + 1 != self.k {
            return &[];
        }
        match SetKey::from_unsorted(x) {
            Some(key) => self.completions_of_key(key),
            None => &[],
        }
    }

    pub fn completions_of_key(&self, key: SetKey) -> &[usize] {
        self.completion_index()
            .get(&key)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    fn check_codegree_set(&self, x: &[usize]) -> Result<()> {
        if x.len() + 1 != self.k {
            return Err(Error::arg(format!(
                "co-degree needs a {}-set, got {} vertices",
                self.k - 1,
                x.len()
            )));
        }
        if let Some(&v) = x.iter().find(|&&v| v >= self.n) {
            return Err(Error::arg(format!("vertex {v} is not below n = {}", self.n)));
        }
        if SetKey::from_unsorted(x).is_none() {
            return Err(Error::arg(format!("{x:?} repeats a vertex")));
        }
        Ok(())
    }

    /// Number of edges containing the (k-1)-set `x`.
    pub fn codegree(&self, x: &[usize]) -> Result<usize> {
        self.check_codegree_set(x)?;
        Ok(self.completions(x).len())
    }

    /// Number of edges `x ∪ {w}` with `w` in the set marked by `members`.
    pub fn codegree_into(&self, x: &[usize], members: &[bool]) -> usize {
        self.completions(x)
            .iter()
            .filter(|&&w| members.get(w).copied().unwrap_or(false))
            .count()
    }

    /// Minimum co-degree over all (k-1)-sets, with a set attaining it.
    pub fn min_codegree_witness(&self) -> Result<(usize, Vec<usize>)> {
        if self.n < self.k {
            return Err(Error::arg(format!(
                "minimum co-degree needs n >= k (n = {}, k = {})",
                self.n, self.k
            )));
        }
        let index = self.completion_index();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in (0..self.n).combinations(self.k - 1) {
            let d = index.get(&SetKey::from_sorted(&x)).map_or(0, Vec::len);
            if best.as_ref().map_or(true, |(b, _)| d < *b) {
                let stop = d == 0;
                best = Some((d, x));
                if stop {
                    break;
                }
            }
        }
        Ok(best.expect("n >= k leaves at least one (k-1)-set"))
    }

    /// `δ_{k-1}(H)`, by full enumeration of (k-1)-sets.
    pub fn min_codegree(&self) -> Result<usize> {
        self.min_codegree_witness().map(|(d, _)| d)
    }

    /// Whether the minimum co-degree is at least `delta * n`.
    pub fn is_delta_dirac(&self, delta: f64) -> Result<bool> {
        Ok(self.min_codegree()? as f64 >= delta * self.n as f64)
    }

    /// The subgraph induced on `vertices`, relabeled to `0..|S|` in increasing global order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Induced> {
        let mut to_global = vertices.to_vec();
        to_global.sort_unstable();
        to_global.dedup();
        if let Some(&v) = to_global.iter().find(|&&v| v >= self.n) {
            return Err(Error::arg(format!("vertex {v} is not below n = {}", self.n)));
        }
        let mut to_local = vec![usize::MAX; self.n];
        for (i, &v) in to_global.iter().enumerate() {
            to_local[v] = i;
        }
        let size = to_global.len();
        let subsets = binomial_f64(size, self.k);
        let mut keys: Vec<SetKey> = if subsets < self.edges.len() as f64 {
            (0..size)
                .combinations(self.k)
                .filter(|local| {
                    let global: Vec<usize> = local.iter().map(|&i| to_global[i]).collect();
                    self.edge_set.contains(&SetKey::from_sorted(&global))
                })
                .map(|local| SetKey::from_sorted(&local))
                .collect()
        } else {
            self.edges
                .iter()
                .filter(|e| e.iter().all(|v| to_local[v] != usize::MAX))
                .map(|e| {
                    // relabeling is monotone, so the local tuple stays sorted
                    let local: Vec<usize> = e.iter().map(|v| to_local[v]).collect();
                    SetKey::from_sorted(&local)
                })
                .collect()
        };
        keys.sort_unstable();
        Ok(Induced {
            graph: KGraph::from_sorted_keys(self.k, size, keys),
            to_global,
        })
    }
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// An induced subgraph together with its label map back into the host graph.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: KGraph,
    to_global: Vec<usize>,
}

impl Induced {
    pub fn to_global(&self, local: usize) -> usize {
        self.to_global[local]
    }

    pub fn to_local(&self, global: usize) -> Option<usize> {
        self.to_global.binary_search(&global).ok()
    }

    /// Host labels in local order.
    pub fn global_labels(&self) -> &[usize] {
        &self.to_global
    }

    pub fn lift(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&v| self.to_global[v]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gen_complete;

    fn k4_minus_012() -> KGraph {
        KGraph::new(3, 4, [[0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn codegree_examples() {
        let k5 = gen_complete(5, 3).unwrap();
        assert_eq!(k5.codegree(&[0, 1]).unwrap(), 3);
        let empty = KGraph::empty(3, 5).unwrap();
        assert_eq!(empty.codegree(&[3, 1]).unwrap(), 0);
        assert_eq!(k4_minus_012().codegree(&[0, 1]).unwrap(), 1);
    }

    #[test]
    fn codegree_rejects_wrong_size() {
        let k5 = gen_complete(5, 3).unwrap();
        assert!(matches!(k5.codegree(&[0]), Err(Error::InvalidArgument(_))));
        assert!(matches!(k5.codegree(&[0, 1, 2]), Err(Error::InvalidArgument(_))));
        assert!(k5.codegree(&[0, 7]).is_err());
        assert!(k5.codegree(&[2, 2]).is_err());
    }

    #[test]
    fn min_codegree_examples() {
        assert_eq!(gen_complete(6, 3).unwrap().min_codegree().unwrap(), 4);
        assert_eq!(KGraph::empty(3, 6).unwrap().min_codegree().unwrap(), 0);
        assert!(KGraph::empty(3, 2).unwrap().min_codegree().is_err());
        let k6 = gen_complete(6, 3).unwrap();
        assert!(k6.is_delta_dirac(4.0 / 6.0).unwrap());
        assert!(!k6.is_delta_dirac(0.7).unwrap());
    }

    #[test]
    fn new_rejects_bad_edges() {
        assert!(KGraph::new(3, 4, [[0, 1]]).is_err());
        assert!(KGraph::new(3, 4, [[0, 1, 4]]).is_err());
        assert!(KGraph::new(3, 4, [[0, 1, 1]]).is_err());
        assert!(KGraph::new(3, 4, [[0, 1, 2], [2, 1, 0]]).is_err());
        assert!(KGraph::new(1, 4, Vec::<Vec<usize>>::new()).is_err());
    }

    #[test]
    fn has_edge_ignores_order() {
        let h = k4_minus_012();
        assert!(h.has_edge(&[3, 1, 0]));
        assert!(!h.has_edge(&[0, 1, 2]));
        assert!(!h.has_edge(&[0, 1]));
        assert_eq!(h.completions(&[3, 0]), &[1, 2]);
    }

    #[test]
    fn induced_examples() {
        let k6 = gen_complete(6, 3).unwrap();
        let sub = k6.induced(&[5, 1, 3, 2]).unwrap();
        assert_eq!(sub.graph, gen_complete(4, 3).unwrap());
        assert_eq!(sub.global_labels(), &[1, 2, 3, 5]);
        assert_eq!(sub.to_local(5), Some(3));
        assert_eq!(sub.lift(&[0, 3]), vec![1, 5]);

        let all: Vec<usize> = (0..6).collect();
        assert_eq!(k6.induced(&all).unwrap().graph, k6);

        let empty = KGraph::empty(3, 6).unwrap();
        let sub = empty.induced(&[0, 2, 4]).unwrap();
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.graph.edge_count(), 0);
    }

    #[test]
    fn induced_paths_agree() {
        // Both edge-selection strategies must give the same subgraph.
        let h = KGraph::new(3, 7, [[0, 1, 2], [0, 2, 5], [1, 5, 6], [2, 3, 4], [4, 5, 6]]).unwrap();
        let small = h.induced(&[0, 1, 2, 5]).unwrap();
        assert_eq!(small.graph.edges().collect::<Vec<_>>(), vec![vec![0, 1, 2], vec![0, 2, 3]]);
        let big = h.induced(&[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(big.graph, h);
    }
}

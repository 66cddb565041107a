//! Vertex orderings and the ℓ-paths and ℓ-cycles they span.
//!
//! The edges of an ℓ-cycle on an ordering of length `N` are the length-`k` windows starting
//! at positions `0, s, 2s, …` with stride `s = k - ℓ`, read cyclically. An ℓ-path uses the
//! same windows without wrapping, so it has `(N - k) / s + 1` edges.

use std::fmt;

use super::{KGraph, SetKey};
use crate::error::{Error, Result};

/// An ordering of pairwise distinct vertices, either open or cyclic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSequence {
    order: Vec<usize>,
    cyclic: bool,
}

impl VertexSequence {
    pub fn new(order: Vec<usize>, cyclic: bool) -> Result<Self> {
        let mut seen = order.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::arg(format!("vertex {} repeats in the ordering", w[0])));
        }
        Ok(VertexSequence { order, cyclic })
    }

    pub fn cyclic(order: Vec<usize>) -> Result<Self> {
        Self::new(order, true)
    }

    pub fn path(order: Vec<usize>) -> Result<Self> {
        Self::new(order, false)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.order
    }
}

fn stride(k: usize, ell: usize) -> Result<usize> {
    if ell >= k {
        return Err(Error::arg(format!("need ℓ < k, got ℓ = {ell}, k = {k}")));
    }
    Ok(k - ell)
}

fn check_cycle_shape(len: usize, k: usize, ell: usize) -> Result<usize> {
    let s = stride(k, ell)?;
    if len % s != 0 {
        return Err(Error::arg(format!(
            "cycle length {len} is not divisible by k - ℓ = {s}"
        )));
    }
    if len < k {
        return Err(Error::arg(format!("cycle length {len} is below k = {k}")));
    }
    Ok(s)
}

/// Whether the edge set of an ℓ-cycle on `len` vertices can fail to pin down its ordering
/// up to rotation, reflection and in-window reordering.
///
/// Group vertices by the set of windows containing them. With `W = len / s` windows, each
/// group lies in a cyclic run of `⌊k/s⌋` or `⌈k/s⌉` consecutive windows. The edge set
/// recovers the ordering when the runs are distinct (`⌈k/s⌉ < W`) and some run length `L`
/// has `2 <= L <= W - 2`, which makes adjacent windows the pairs sharing the most runs.
/// With `W = 3` every cyclic order of the windows is the same up to reflection.
pub fn is_degenerate_shape(len: usize, k: usize, ell: usize) -> bool {
    let s = k - ell;
    let w = len / s;
    let (short, long) = (k / s, k.div_ceil(s));
    if w < 3 || long >= w {
        return true;
    }
    let informative = |run: usize| (2..=w - 2).contains(&run);
    w > 3 && !informative(short) && !(k % s != 0 && informative(long))
}

fn cyclic_window(order: &[usize], start: usize, k: usize) -> SetKey {
    let n = order.len();
    let mut buf = [0usize; super::MAX_UNIFORMITY];
    for (j, slot) in buf[..k].iter_mut().enumerate() {
        *slot = order[(start + j) % n];
    }
    SetKey::from_unsorted(&buf[..k]).expect("ordering vertices are distinct")
}

/// Outcome of checking an ordering against a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    /// Start positions of windows that are not edges.
    pub violations: Vec<usize>,
    pub edge_count: usize,
    pub degenerate: bool,
}

impl CycleReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every stride-`(k - ℓ)` window of the cyclic ordering is an edge of `h`.
pub fn validate_ell_cycle(h: &KGraph, ord: &VertexSequence, ell: usize) -> Result<CycleReport> {
    if !ord.is_cyclic() {
        return Err(Error::arg("ℓ-cycle validation needs a cyclic ordering"));
    }
    let k = h.k();
    let s = check_cycle_shape(ord.len(), k, ell)?;
    if let Some(&v) = ord.as_slice().iter().find(|&&v| v >= h.n()) {
        return Err(Error::arg(format!("vertex {v} is not below n = {}", h.n())));
    }
    let violations = (0..ord.len())
        .step_by(s)
        .filter(|&start| !h.has_edge_key(cyclic_window(ord.as_slice(), start, k)))
        .collect();
    Ok(CycleReport {
        violations,
        edge_count: ord.len() / s,
        degenerate: is_degenerate_shape(ord.len(), k, ell),
    })
}

/// The edge set of an ℓ-cycle, as sorted edge keys. Equal for orderings that differ by
/// rotation by multiples of `k - ℓ`, reflection, or reorderings inside windows that keep
/// every window's vertex set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCycle(Vec<SetKey>);

impl CanonicalCycle {
    pub fn keys(&self) -> &[SetKey] {
        &self.0
    }

    pub fn edges(&self) -> Vec<Vec<usize>> {
        self.0.iter().map(|e| e.to_vec()).collect()
    }

    pub(crate) fn from_order(order: &[usize], k: usize, s: usize) -> Self {
        let mut keys: Vec<SetKey> = (0..order.len())
            .step_by(s)
            .map(|start| cyclic_window(order, start, k))
            .collect();
        keys.sort_unstable();
        CanonicalCycle(keys)
    }
}

impl fmt::Debug for CanonicalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub fn canonical_cycle(ord: &VertexSequence, k: usize, ell: usize) -> Result<CanonicalCycle> {
    let s = check_cycle_shape(ord.len(), k, ell)?;
    if k > super::MAX_UNIFORMITY {
        return Err(Error::arg(format!("k = {k} is above the supported maximum")));
    }
    Ok(CanonicalCycle::from_order(ord.as_slice(), k, s))
}

/// A cyclic ordering read as an ℓ-cycle, with its edge set precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllCycle {
    ordering: VertexSequence,
    k: usize,
    ell: usize,
    canonical: CanonicalCycle,
}

impl EllCycle {
    pub fn new(ordering: VertexSequence, k: usize, ell: usize) -> Result<Self> {
        if !ordering.is_cyclic() {
            return Err(Error::arg("an ℓ-cycle needs a cyclic ordering"));
        }
        let canonical = canonical_cycle(&ordering, k, ell)?;
        Ok(EllCycle {
            ordering,
            k,
            ell,
            canonical,
        })
    }

    pub fn ordering(&self) -> &[usize] {
        self.ordering.as_slice()
    }

    pub fn sequence(&self) -> &VertexSequence {
        &self.ordering
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn canonical(&self) -> &CanonicalCycle {
        &self.canonical
    }

    pub fn validate(&self, h: &KGraph) -> Result<CycleReport> {
        if h.k() != self.k {
            return Err(Error::arg("host uniformity differs from the cycle's"));
        }
        validate_ell_cycle(h, &self.ordering, self.ell)
    }
}

/// An open ordering read as an ℓ-path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EllPath {
    ordering: Vec<usize>,
    k: usize,
    ell: usize,
}

impl EllPath {
    pub fn new(ordering: Vec<usize>, k: usize, ell: usize) -> Result<Self> {
        let s = stride(k, ell)?;
        let n = ordering.len();
        if n < k || (n - k) % s != 0 {
            return Err(Error::arg(format!(
                "an ℓ-path with k = {k}, ℓ = {ell} needs N >= k and N ≡ k (mod {s}), got N = {n}"
            )));
        }
        let ordering = VertexSequence::path(ordering)?.into_vec();
        Ok(EllPath { ordering, k, ell })
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn edge_count(&self) -> usize {
        (self.len() - self.k) / (self.k - self.ell) + 1
    }

    /// Window start positions.
    pub fn edge_starts(&self) -> impl Iterator<Item = usize> {
        (0..=self.len() - self.k).step_by(self.k - self.ell)
    }

    /// Edges in path order, each listed in path order.
    pub fn edges(&self) -> impl Iterator<Item = &[usize]> {
        self.edge_starts().map(|a| &self.ordering[a..a + self.k])
    }

    pub fn first_edge(&self) -> &[usize] {
        &self.ordering[..self.k]
    }

    pub fn last_edge(&self) -> &[usize] {
        &self.ordering[self.len() - self.k..]
    }

    /// Start positions of windows that are not edges of `h`.
    pub fn violations(&self, h: &KGraph) -> Vec<usize> {
        self.edge_starts()
            .filter(|&a| !h.has_edge(&self.ordering[a..a + self.k]))
            .collect()
    }

    pub fn edge_keys(&self) -> Vec<SetKey> {
        self.edges()
            .map(|e| SetKey::from_unsorted(e).expect("distinct vertices"))
            .collect()
    }
}

use std::collections::BTreeMap;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::hypergraph::{KGraph, PartiteView};
use crate::rng::{self, Stage};

/// An ordered equipartition into parts of size `m`, with its partite co-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPartition {
    pub parts: Vec<Vec<usize>>,
    pub delta_star: usize,
    pub tries: usize,
}

impl GoodPartition {
    pub fn view<'g>(&self, h: &'g KGraph) -> Result<PartiteView<'g>> {
        PartiteView::equipartition(h, self.parts.clone())
    }
}

/// `⌈(δ - 0.1) m⌉` clamped at 0, with `δ = δ_{k-1}(H) / n`.
pub fn default_dstar_threshold(h: &KGraph, m: usize) -> Result<usize> {
    let delta = h.min_codegree()? as f64 / h.n() as f64;
    Ok(((delta - 0.1) * m as f64).ceil().max(0.0) as usize)
}

/// Samples uniform ordered equipartitions of `vertices` into parts of size `m` until
/// `δ*_{k-1}` reaches `threshold`.
pub fn sample_good_partition(
    h: &KGraph,
    vertices: &[usize],
    m: usize,
    threshold: usize,
    max_tries: usize,
    seed: u64,
) -> Result<GoodPartition> {
    if m == 0 || vertices.len() % m != 0 {
        return Err(Error::arg(format!(
            "{} vertices do not split into parts of size {m}",
            vertices.len()
        )));
    }
    if vertices.len() / m < h.k() {
        return Err(Error::arg(format!(
            "{} parts are fewer than k = {}",
            vertices.len() / m,
            h.k()
        )));
    }
    let mut histogram = BTreeMap::new();
    for attempt in 0..max_tries {
        let mut rng = rng::derive(seed, Stage::Partition, attempt as u64);
        let mut order = vertices.to_vec();
        order.shuffle(&mut rng);
        let parts: Vec<Vec<usize>> = order.chunks(m).map(<[usize]>::to_vec).collect();
        let delta_star = PartiteView::equipartition(h, parts.clone())?.min_codegree()?;
        if delta_star >= threshold {
            return Ok(GoodPartition {
                parts,
                delta_star,
                tries: attempt + 1,
            });
        }
        *histogram.entry(delta_star).or_insert(0usize) += 1;
    }
    let hist = histogram
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    Err(Error::Exhausted {
        stage: "good partition",
        attempts: max_tries,
        detail: format!("δ* never reached {threshold}; histogram (δ*:tries) {hist}"),
    })
}

use itertools::Itertools;
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::hypergraph::{KGraph, SetKey};
use crate::rng::{self, Stage};

/// Disjoint blocks `W_1, …, W_m` of size `t` into which every (k-1)-set has co-degree at
/// least `eta · t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectingSystem {
    /// Each block sorted increasingly.
    pub blocks: Vec<Vec<usize>>,
    pub t: usize,
    /// `min_codegree / t`.
    pub eta: f64,
    /// Smallest `d(X, W_i)` over all (k-1)-sets `X` and blocks `i`.
    pub min_codegree: usize,
    pub tries: usize,
}

impl ConnectingSystem {
    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    /// All block vertices, sorted.
    pub fn covered(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().sorted_unstable().collect()
    }
}

/// A (k-1)-set and block attaining the minimum block co-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockWitness {
    pub x: Vec<usize>,
    pub block: usize,
    pub codegree: usize,
}

/// `min_{X, i} d(X, W_i)` over every (k-1)-set `X` of the host, by full enumeration.
pub fn block_min_codegree(h: &KGraph, blocks: &[Vec<usize>]) -> Result<(usize, Option<BlockWitness>)> {
    let mut block_of = vec![usize::MAX; h.n()];
    for (i, block) in blocks.iter().enumerate() {
        for &v in block {
            if v >= h.n() || block_of[v] != usize::MAX {
                return Err(Error::arg(format!("vertex {v} is out of range or in two blocks")));
            }
            block_of[v] = i;
        }
    }
    if blocks.is_empty() {
        return Ok((0, None));
    }
    let mut best: Option<BlockWitness> = None;
    let mut tally = vec![0usize; blocks.len()];
    for x in (0..h.n()).combinations(h.k() - 1) {
        tally.iter_mut().for_each(|c| *c = 0);
        for &v in h.completions_of_key(SetKey::from_sorted(&x)) {
            if let Some(c) = tally.get_mut(block_of[v]) {
                *c += 1;
            }
        }
        let (block, &codegree) = tally
            .iter()
            .enumerate()
            .min_by_key(|&(_, c)| *c)
            .expect("at least one block");
        if best.as_ref().map_or(true, |b| codegree < b.codegree) {
            best = Some(BlockWitness { x, block, codegree });
            if codegree == 0 {
                break;
            }
        }
    }
    Ok(best.map_or((0, None), |b| (b.codegree, Some(b))))
}

/// Samples `m` disjoint random blocks of size `t` until every (k-1)-set has at least
/// `eta_target · t` completions in every block.
pub fn find_connecting_system(
    h: &KGraph,
    m: usize,
    t: usize,
    eta_target: f64,
    max_tries: usize,
    seed: u64,
) -> Result<ConnectingSystem> {
    if m == 0 || t == 0 {
        return Err(Error::arg("need m >= 1 and t >= 1"));
    }
    if m * t > h.n() {
        return Err(Error::arg(format!("m·t = {} exceeds n = {}", m * t, h.n())));
    }
    if !(0.0..=1.0).contains(&eta_target) {
        return Err(Error::arg(format!("η = {eta_target} outside [0, 1]")));
    }
    let need = eta_target * t as f64 - 1e-9;
    let mut worst: Option<BlockWitness> = None;
    let mut best_eta = 0.0f64;
    for attempt in 0..max_tries {
        let mut rng = rng::derive(seed, Stage::Connecting, attempt as u64);
        let mut vertices: Vec<usize> = (0..h.n()).collect();
        vertices.shuffle(&mut rng);
        let blocks: Vec<Vec<usize>> = vertices[..m * t]
            .chunks(t)
            .map(|c| c.iter().copied().sorted_unstable().collect())
            .collect();
        let (min_codegree, witness) = block_min_codegree(h, &blocks)?;
        if min_codegree as f64 >= need {
            return Ok(ConnectingSystem {
                blocks,
                t,
                eta: min_codegree as f64 / t as f64,
                min_codegree,
                tries: attempt + 1,
            });
        }
        best_eta = best_eta.max(min_codegree as f64 / t as f64);
        worst = witness;
    }
    let detail = match worst {
        Some(w) => format!(
            "best η reached {best_eta:.3} < {eta_target}; last try: X = {:?} has co-degree {} into block {}",
            w.x, w.codegree, w.block
        ),
        None => "no tries were made".to_string(),
    };
    Err(Error::Exhausted {
        stage: "connecting system",
        attempts: max_tries,
        detail,
    })
}

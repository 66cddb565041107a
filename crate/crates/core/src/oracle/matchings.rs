use std::collections::HashMap;

use super::OracleConfig;
use crate::error::{Error, Result};
use crate::hypergraph::{KGraph, PartiteView};

/// Number of perfect matchings of the k-partite k-graph `H[Π]` with `k` parts of size `m`.
///
/// Vertices of the first part are covered in order, so every matching is counted once.
/// Sub-results are memoised on the set of covered vertices.
pub fn count_perfect_matchings_partite(view: &PartiteView<'_>, cfg: &OracleConfig) -> Result<u128> {
    let k = view.base().k();
    if view.num_parts() != k {
        return Err(Error::arg(format!(
            "need exactly k = {k} parts, got {}",
            view.num_parts()
        )));
    }
    let m = view
        .part_size()
        .ok_or_else(|| Error::arg("partite matching count needs an equipartition"))?;
    if m > cfg.max_part_size {
        return Err(Error::LimitExceeded {
            what: "part size",
            value: m,
            limit: cfg.max_part_size,
            hint: "raise the part-size limit or use smaller parts",
        });
    }
    if m == 0 {
        return Ok(1);
    }

    // Bit `(i - 1) * m + p` stands for the p-th vertex of part i, for i >= 1.
    let bit = |v: usize| -> u128 {
        let i = view.part_of(v).expect("edge vertices lie in parts");
        let p = view.part(i).iter().position(|&u| u == v).expect("member");
        1u128 << ((i - 1) * m + p)
    };
    let mut incident: Vec<Vec<u128>> = vec![Vec::new(); m];
    for e in view.base().edges() {
        if !view.is_partite_edge(&e) {
            continue;
        }
        let first = e
            .iter()
            .find(|&&v| view.part_of(v) == Some(0))
            .copied()
            .expect("partite edges meet every part");
        let j = view.part(0).iter().position(|&u| u == first).expect("member");
        let mask = e.iter().filter(|&&v| v != first).fold(0, |acc, &v| acc | bit(v));
        incident[j].push(mask);
    }

    fn go(j: usize, used: u128, incident: &[Vec<u128>], memo: &mut HashMap<u128, u128>) -> u128 {
        if j == incident.len() {
            return 1;
        }
        if let Some(&c) = memo.get(&used) {
            return c;
        }
        let total = incident[j]
            .iter()
            .filter(|&&e| e & used == 0)
            .map(|&e| go(j + 1, used | e, incident, memo))
            .sum();
        memo.insert(used, total);
        total
    }
    Ok(go(0, 0, &incident, &mut HashMap::new()))
}

fn incident_masks(h: &KGraph, cfg: &OracleConfig) -> Result<Vec<Vec<u64>>> {
    let n = h.n();
    let limit = cfg.max_matching_n.min(64);
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "matching search vertex count",
            value: n,
            limit,
            hint: "use a smaller instance",
        });
    }
    let mut incident = vec![Vec::new(); n];
    for e in h.edges() {
        let mask = e.iter().fold(0u64, |acc, &v| acc | 1 << v);
        incident[e[0]].push(mask);
    }
    Ok(incident)
}

/// Number of perfect matchings of an arbitrary k-graph.
pub fn count_perfect_matchings(h: &KGraph, cfg: &OracleConfig) -> Result<u128> {
    let incident = incident_masks(h, cfg)?;
    if h.n() % h.k() != 0 {
        return Ok(0);
    }
    let full = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };

    // The lowest free vertex must be the smallest vertex of its edge.
    fn go(free: u64, incident: &[Vec<u64>], memo: &mut HashMap<u64, u128>) -> u128 {
        if free == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(&free) {
            return c;
        }
        let v = free.trailing_zeros() as usize;
        let total = incident[v]
            .iter()
            .filter(|&&e| e & free == e)
            .map(|&e| go(free & !e, incident, memo))
            .sum();
        memo.insert(free, total);
        total
    }
    Ok(go(full, &incident, &mut HashMap::new()))
}

/// A maximum family of pairwise disjoint edges, found by branch and bound.
pub fn maximum_matching(h: &KGraph, cfg: &OracleConfig) -> Result<Vec<Vec<usize>>> {
    let incident = incident_masks(h, cfg)?;
    let k = h.k();
    let full = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };

    struct Bnb<'a> {
        incident: &'a [Vec<u64>],
        k: usize,
        current: Vec<u64>,
        best: Vec<u64>,
    }
    impl Bnb<'_> {
        fn go(&mut self, avail: u64) {
            if self.current.len() + avail.count_ones() as usize / self.k <= self.best.len() {
                return;
            }
            if avail == 0 {
                self.best = self.current.clone();
                return;
            }
            let v = avail.trailing_zeros() as usize;
            for &e in &self.incident[v] {
                if e & avail == e {
                    self.current.push(e);
                    self.go(avail & !e);
                    self.current.pop();
                }
            }
            // Leave v uncovered.
            self.go(avail & !(1 << v));
        }
    }
    let mut bnb = Bnb {
        incident: &incident,
        k,
        current: Vec::new(),
        best: Vec::new(),
    };
    bnb.go(full);
    Ok(bnb
        .best
        .iter()
        .map(|&mask| (0..64).filter(|&v| mask >> v & 1 == 1).collect())
        .collect())
}

use itertools::Itertools;

use super::{KGraph, SetKey};
use crate::error::{Error, Result};

/// An ordered family of disjoint vertex parts over a host graph.
///
/// Only edges with every vertex in a distinct part belong to the partite graph `H[Π]`.
#[derive(Clone, Debug)]
pub struct PartiteView<'g> {
    base: &'g KGraph,
    parts: Vec<Vec<usize>>,
    part_of: Vec<Option<usize>>,
}

impl<'g> PartiteView<'g> {
    pub fn new(base: &'g KGraph, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut part_of = vec![None; base.n()];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                match part_of.get_mut(v) {
                    None => {
                        return Err(Error::arg(format!(
                            "vertex {v} in part {i} is not below n = {}",
                            base.n()
                        )))
                    }
                    Some(Some(j)) => {
                        return Err(Error::arg(format!(
                            "vertex {v} appears in parts {j} and {i}"
                        )))
                    }
                    Some(slot) => *slot = Some(i),
                }
            }
        }
        Ok(PartiteView {
            base,
            parts,
            part_of,
        })
    }

    /// Like [`PartiteView::new`] but also requires non-empty parts of one common size.
    pub fn equipartition(base: &'g KGraph, parts: Vec<Vec<usize>>) -> Result<Self> {
        let view = Self::new(base, parts)?;
        if view.part_size().is_none() {
            return Err(Error::arg("parts are not of one common non-zero size"));
        }
        Ok(view)
    }

    pub fn base(&self) -> &'g KGraph {
        self.base
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// The common part size, if the view is an equipartition.
    pub fn part_size(&self) -> Option<usize> {
        let m = self.parts.first()?.len();
        (m > 0 && self.parts.iter().all(|p| p.len() == m)).then_some(m)
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.part_of.get(v).copied().flatten()
    }

    /// Whether `e` is an edge of the host with its vertices in pairwise distinct parts.
    pub fn is_partite_edge(&self, e: &[usize]) -> bool {
        if !self.base.has_edge(e) {
            return false;
        }
        let mut seen = Vec::with_capacity(e.len());
        for &v in e {
            match self.part_of(v) {
                Some(p) if !seen.contains(&p) => seen.push(p),
                _ => return false,
            }
        }
        true
    }

    /// The view restricted to the listed parts, in the listed order.
    pub fn select(&self, indices: &[usize]) -> Result<PartiteView<'g>> {
        let parts = indices
            .iter()
            .map(|&i| {
                self.parts
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::arg(format!("no part {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PartiteView::new(self.base, parts)
    }

    /// `d(X, V_i)`: completions of `x` inside part `i`.
    pub fn codegree_into_part(&self, x: &[usize], i: usize) -> usize {
        self.base
            .completions(x)
            .iter()
            .filter(|&&v| self.part_of(v) == Some(i))
            .count()
    }

    /// `δ*_{k-1}(H[Π])` together with an attaining pair `(X, i)`.
    ///
    /// Ranges over every (k-1)-set `X` taking one vertex from each of k-1 distinct parts and
    /// every further part `i` not among them.
    pub fn min_codegree_witness(&self) -> Result<(usize, Option<(Vec<usize>, usize)>)> {
        let k = self.base.k();
        let s = self.parts.len();
        if s < k {
            return Err(Error::arg(format!(
                "partite co-degree needs at least k = {k} parts, got {s}"
            )));
        }
        let mut best = usize::MAX;
        let mut witness = None;
        let mut tally = vec![0usize; s];
        for chosen in (0..s).combinations(k - 1) {
            let factors = chosen.iter().map(|&j| self.parts[j].iter().copied());
            for x in factors.multi_cartesian_product() {
                tally.iter_mut().for_each(|c| *c = 0);
                let key = SetKey::from_unsorted(&x).expect("parts are disjoint");
                for &v in self.base.completions_of_key(key) {
                    if let Some(p) = self.part_of(v) {
                        tally[p] += 1;
                    }
                }
                for (i, &count) in tally.iter().enumerate() {
                    if count < best && !chosen.contains(&i) {
                        best = count;
                        witness = Some((x.clone(), i));
                        if best == 0 {
                            return Ok((0, witness));
                        }
                    }
                }
            }
        }
        // Empty parts leave nothing to range over.
        Ok((if witness.is_some() { best } else { 0 }, witness))
    }

    pub fn min_codegree(&self) -> Result<usize> {
        self.min_codegree_witness().map(|(d, _)| d)
    }
}

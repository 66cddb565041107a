//! Square 0/1 bipartite incidence matrices and maximum matching.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hypergraph::{KGraph, SetKey};

/// Largest side supported by the bit-row representation.
pub const MAX_SIDE: usize = 64;

/// An `m × m` bipartite incidence, one bit row per left vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteMatrix {
    m: usize,
    rows: Vec<u64>,
}

impl BipartiteMatrix {
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_SIDE {
            return Err(Error::arg(format!("side {m} exceeds {MAX_SIDE}")));
        }
        Ok(BipartiteMatrix {
            m,
            rows: vec![0; m],
        })
    }

    pub fn complete(m: usize) -> Result<Self> {
        let mut b = Self::new(m)?;
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        b.rows.iter_mut().for_each(|r| *r = full);
        Ok(b)
    }

    pub fn identity(m: usize) -> Result<Self> {
        let mut b = Self::new(m)?;
        for i in 0..m {
            b.set(i, i, true);
        }
        Ok(b)
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let mut b = Self::new(rows.len())?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rows.len() {
                return Err(Error::arg(format!("row {i} has {} entries, expected {}", row.len(), rows.len())));
            }
            for (j, &bit) in row.iter().enumerate() {
                b.set(i, j, bit);
            }
        }
        Ok(b)
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        assert!(i < self.m && j < self.m, "entry ({i}, {j}) outside {0}x{0}", self.m);
        if bit {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// Bit `j` of row `i` is entry `(i, j)`.
    pub fn row_bits(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn row_degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    pub fn col_degree(&self, j: usize) -> usize {
        self.rows.iter().filter(|&&r| r >> j & 1 == 1).count()
    }

    pub fn min_left_degree(&self) -> usize {
        (0..self.m).map(|i| self.row_degree(i)).min().unwrap_or(0)
    }

    pub fn min_right_degree(&self) -> usize {
        (0..self.m).map(|j| self.col_degree(j)).min().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.min_left_degree().min(self.min_right_degree())
    }

    /// Hopcroft–Karp maximum matching. Entry `i` is the right vertex matched to left `i`.
    ///
    /// Left vertices are scanned in increasing order and neighbours in increasing order, so
    /// the result depends only on the matrix.
    pub fn maximum_matching(&self) -> Vec<Option<usize>> {
        const FREE: usize = usize::MAX;
        let m = self.m;
        let adj: Vec<Vec<usize>> = (0..m)
            .map(|i| (0..m).filter(|&j| self.get(i, j)).collect())
            .collect();
        let mut match_left = vec![FREE; m];
        let mut match_right = vec![FREE; m];
        let mut dist = vec![0usize; m];

        loop {
            // BFS layers from free left vertices.
            let mut queue = VecDeque::new();
            for i in 0..m {
                if match_left[i] == FREE {
                    dist[i] = 0;
                    queue.push_back(i);
                } else {
                    dist[i] = usize::MAX;
                }
            }
            let mut found = false;
            while let Some(i) = queue.pop_front() {
                for &j in &adj[i] {
                    match match_right[j] {
                        FREE => found = true,
                        i2 if dist[i2] == usize::MAX => {
                            dist[i2] = dist[i] + 1;
                            queue.push_back(i2);
                        }
                        _ => {}
                    }
                }
            }
            if !found {
                break;
            }
            let mut augmented = false;
            for i in 0..m {
                if match_left[i] == FREE
                    && augment(i, &adj, &mut match_left, &mut match_right, &mut dist)
                {
                    augmented = true;
                }
            }
            if !augmented {
                break;
            }
        }
        match_left
            .into_iter()
            .map(|j| (j != FREE).then_some(j))
            .collect()
    }

    /// A perfect matching as a left-to-right assignment, if one exists.
    pub fn perfect_matching(&self) -> Option<Vec<usize>> {
        self.maximum_matching().into_iter().collect()
    }
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &j in &adj[i] {
        let next = match_right[j];
        let ok = next == usize::MAX
            || (dist[next] == dist[i] + 1 && augment(next, adj, match_left, match_right, dist));
        if ok {
            match_left[i] = j;
            match_right[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

/// The incidence between (k-1)-sets `left[j]` and the vertices `right[v]`: entry `(j, v)`
/// is set iff `left[j] ∪ {right[v]}` is an edge of `h`.
pub fn aux_incidence<'a, I>(h: &KGraph, left: I, right: &[usize]) -> Result<BipartiteMatrix>
where
    I: IntoIterator<Item = &'a [usize]>,
{
    let mut b = BipartiteMatrix::new(right.len())?;
    let mut rows = 0;
    for (j, set) in left.into_iter().enumerate() {
        if j >= right.len() {
            return Err(Error::arg("more left sets than right vertices"));
        }
        rows += 1;
        let key = SetKey::from_unsorted(set)
            .ok_or_else(|| Error::arg(format!("left set {set:?} repeats a vertex")))?;
        let completions = h.completions_of_key(key);
        for (v, &u) in right.iter().enumerate() {
            if completions.binary_search(&u).is_ok() {
                b.set(j, v, true);
            }
        }
    }
    if rows != right.len() {
        return Err(Error::arg(format!(
            "{rows} left sets against {} right vertices",
            right.len()
        )));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let b = BipartiteMatrix::from_rows(&[
            vec![true, true, false],
            vec![false, true, true],
            vec![true, true, true],
        ])
        .unwrap();
        assert_eq!(b.min_left_degree(), 2);
        assert_eq!(b.col_degree(1), 3);
        assert_eq!(b.min_right_degree(), 2);
        assert_eq!(BipartiteMatrix::complete(5).unwrap().min_degree(), 5);
        assert_eq!(BipartiteMatrix::new(4).unwrap().min_degree(), 0);
    }

    #[test]
    fn hopcroft_karp_perfect() {
        let b = BipartiteMatrix::from_rows(&[
            vec![true, true, false],
            vec![true, false, false],
            vec![false, true, true],
        ])
        .unwrap();
        let pm = b.perfect_matching().unwrap();
        assert_eq!(pm, vec![1, 0, 2]);
    }

    #[test]
    fn hopcroft_karp_deficient() {
        // Two left vertices share a single neighbour.
        let b = BipartiteMatrix::from_rows(&[
            vec![true, false, false],
            vec![true, false, false],
            vec![true, true, true],
        ])
        .unwrap();
        let mm = b.maximum_matching();
        assert_eq!(mm.iter().flatten().count(), 2);
        assert!(b.perfect_matching().is_none());
    }

    #[test]
    fn matching_size_agrees_with_brute_force() {
        use itertools::Itertools;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let m = rng.gen_range(1..=6);
            let mut b = BipartiteMatrix::new(m).unwrap();
            for i in 0..m {
                for j in 0..m {
                    b.set(i, j, rng.gen_bool(0.4));
                }
            }
            let hk = b.maximum_matching().iter().flatten().count();
            let best = (0..m)
                .permutations(m)
                .map(|p| (0..m).filter(|&i| b.get(i, p[i])).count())
                .max()
                .unwrap();
            assert_eq!(hk, best);
        }
    }
}

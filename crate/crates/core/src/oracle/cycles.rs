use std::collections::BTreeSet;

use num_rational::Ratio;
use rayon::prelude::*;

use super::{run_in_pool, OracleConfig, HARD_LIMIT_N};
use crate::error::{Error, Result};
use crate::hypergraph::{is_degenerate_shape, CanonicalCycle, KGraph, SetKey, MAX_UNIFORMITY};

/// Result of an exhaustive Hamiltonian ℓ-cycle count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCensus {
    /// Distinct cycles, compared as edge sets.
    pub distinct_cycles: u64,
    /// Vertex sequences `(v_0, …, v_{n-1})` whose windows at positions `0, s, 2s, …`
    /// (read cyclically) are all edges.
    pub orderings: u64,
    pub degenerate: bool,
}

impl CycleCensus {
    /// `orderings / distinct_cycles`, or `None` when there are no cycles.
    pub fn symmetry_ratio(&self) -> Option<Ratio<u64>> {
        (self.distinct_cycles > 0).then(|| Ratio::new(self.orderings, self.distinct_cycles))
    }
}

/// Every distinct cycle of a census, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSet {
    pub cycles: BTreeSet<CanonicalCycle>,
    pub orderings: u64,
    pub degenerate: bool,
}

impl CycleSet {
    pub fn census(&self) -> CycleCensus {
        CycleCensus {
            distinct_cycles: self.cycles.len() as u64,
            orderings: self.orderings,
            degenerate: self.degenerate,
        }
    }
}

pub fn count_ham_ell_cycles(h: &KGraph, ell: usize, cfg: &OracleConfig) -> Result<CycleCensus> {
    enumerate_ham_ell_cycles(h, ell, cfg).map(|set| set.census())
}

/// Enumerates all Hamiltonian ℓ-cycles of `h` by backtracking.
///
/// Rotating an ordering by `s = k - ℓ` positions keeps its windows, so the search pins
/// vertex 0 to a position in `0..s` and multiplies the sequence count by `n / s`.
/// Reflections and in-window reorderings are not quotiented out; they show up as separate
/// orderings and are merged by the canonical edge-set form.
pub fn enumerate_ham_ell_cycles(h: &KGraph, ell: usize, cfg: &OracleConfig) -> Result<CycleSet> {
    let (k, n) = (h.k(), h.n());
    if ell >= k {
        return Err(Error::arg(format!("need ℓ < k, got ℓ = {ell}, k = {k}")));
    }
    let s = k - ell;
    if n % s != 0 {
        return Err(Error::arg(format!("n = {n} is not divisible by k - ℓ = {s}")));
    }
    if n < k {
        return Err(Error::arg(format!("n = {n} is below k = {k}")));
    }
    let limit = cfg.limit_n.min(HARD_LIMIT_N);
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "cycle census vertex count",
            value: n,
            limit,
            hint: "raise --limit-n (at most 14) or use a smaller instance",
        });
    }

    let root = Search::new(h, s);
    let depth = n.min(2);
    let mut prefixes = Vec::new();
    for zero_pos in 0..s {
        let mut search = root.clone();
        search.zero_pos = zero_pos;
        search.walk(0, depth, &mut |st| prefixes.push((zero_pos, st.order[..depth].to_vec())));
    }

    let explore = |(zero_pos, prefix): &(usize, Vec<usize>)| {
        let mut search = root.clone();
        search.zero_pos = *zero_pos;
        for (p, &v) in prefix.iter().enumerate() {
            search.order[p] = v;
            search.used |= 1 << v;
        }
        let mut count = 0u64;
        let mut found = BTreeSet::new();
        search.walk(depth, n, &mut |st| {
            if st.closes() {
                count += 1;
                found.insert(CanonicalCycle::from_order(&st.order, k, s));
            }
        });
        (count, found)
    };
    let merge = |mut a: (u64, BTreeSet<CanonicalCycle>), b: (u64, BTreeSet<CanonicalCycle>)| {
        a.0 += b.0;
        a.1.extend(b.1);
        a
    };
    let (rooted, cycles) = if cfg.workers <= 1 {
        prefixes.iter().map(explore).fold(Default::default(), merge)
    } else {
        run_in_pool(cfg.workers, || {
            prefixes
                .par_iter()
                .map(explore)
                .reduce(Default::default, merge)
        })
    };
    Ok(CycleSet {
        cycles,
        orderings: rooted * (n / s) as u64,
        degenerate: is_degenerate_shape(n, k, ell),
    })
}

#[derive(Clone)]
struct Search<'a> {
    h: &'a KGraph,
    k: usize,
    s: usize,
    n: usize,
    zero_pos: usize,
    order: Vec<usize>,
    used: u32,
}

impl<'a> Search<'a> {
    fn new(h: &'a KGraph, s: usize) -> Self {
        Search {
            h,
            k: h.k(),
            s,
            n: h.n(),
            zero_pos: 0,
            order: vec![0; h.n()],
            used: 0,
        }
    }

    /// Window start ending at `pos`, if a window ends there.
    fn window_ending_at(&self, pos: usize) -> Option<usize> {
        let start = (pos + 1).checked_sub(self.k)?;
        (start % self.s == 0).then_some(start)
    }

    fn walk(&mut self, pos: usize, stop: usize, visit: &mut dyn FnMut(&Self)) {
        if pos == stop {
            visit(self);
            return;
        }
        let h = self.h;
        let window = self
            .window_ending_at(pos)
            .map(|a| h.completions_of_key(SetKey::from_unsorted(&self.order[a..pos]).expect("distinct")));
        if pos == self.zero_pos {
            if window.map_or(true, |c| c.binary_search(&0).is_ok()) {
                self.place(pos, 0, stop, visit);
            }
            return;
        }
        match window {
            Some(completions) => {
                for &v in completions {
                    if v != 0 && self.used >> v & 1 == 0 {
                        self.place(pos, v, stop, visit);
                    }
                }
            }
            None => {
                for v in 1..self.n {
                    if self.used >> v & 1 == 0 {
                        self.place(pos, v, stop, visit);
                    }
                }
            }
        }
    }

    fn place(&mut self, pos: usize, v: usize, stop: usize, visit: &mut dyn FnMut(&Self)) {
        self.order[pos] = v;
        self.used |= 1 << v;
        self.walk(pos + 1, stop, visit);
        self.used &= !(1 << v);
    }

    /// Checks the windows that wrap past the end of the sequence.
    fn closes(&self) -> bool {
        let mut buf = [0usize; MAX_UNIFORMITY];
        (0..self.n)
            .step_by(self.s)
            .filter(|&a| a + self.k > self.n)
            .all(|a| {
                for (j, slot) in buf[..self.k].iter_mut().enumerate() {
                    *slot = self.order[(a + j) % self.n];
                }
                self.h
                    .has_edge_key(SetKey::from_unsorted(&buf[..self.k]).expect("distinct"))
            })
    }
}

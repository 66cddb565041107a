use crate::error::{Error, Result};
use crate::hypergraph::{EllPath, KGraph, SetKey};

/// Node limit for the constrained path search. `None` searches exhaustively.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { max_nodes: None }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
        }
    }
}

fn check_end(f: &KGraph, name: &str, seq: &[usize]) -> Result<()> {
    if seq.len() != f.k() {
        return Err(Error::arg(format!("{name} edge has {} vertices, need {}", seq.len(), f.k())));
    }
    if !f.has_edge(seq) {
        return Err(Error::arg(format!("{name} edge {seq:?} is not an edge")));
    }
    Ok(())
}

/// A Hamiltonian ℓ-path of `f` whose first `k` positions are `first` and whose last `k`
/// positions are `last`, both read as ordered sequences.
///
/// Interior positions are filled from both ends; at each node the side with fewer
/// candidates is extended and candidates are tried in increasing label order. Returns
/// `Ok(None)` when no such path exists and `Err(Exhausted)` when the budget runs out first.
pub fn find_ell_path_constrained(
    f: &KGraph,
    ell: usize,
    first: &[usize],
    last: &[usize],
    budget: SearchBudget,
) -> Result<Option<EllPath>> {
    let (k, n) = (f.k(), f.n());
    if ell >= k {
        return Err(Error::arg(format!("need ℓ < k, got ℓ = {ell}, k = {k}")));
    }
    let s = k - ell;
    if n < k || (n - k) % s != 0 {
        return Err(Error::arg(format!(
            "an ℓ-path on {n} vertices needs n >= k and n ≡ k (mod {s})"
        )));
    }
    check_end(f, "first", first)?;
    check_end(f, "last", last)?;

    let mut search = PathSearch {
        f,
        k,
        s,
        n,
        slots: vec![None; n],
        used: vec![false; n],
        nodes: 0,
        budget: budget.max_nodes,
    };
    let ends = first.iter().enumerate().chain(last.iter().enumerate().map(|(i, v)| (n - k + i, v)));
    for (p, &v) in ends {
        match search.slots[p] {
            Some(u) if u != v => return Ok(None),
            Some(_) => {}
            None if search.used[v] => return Ok(None),
            None => {
                search.slots[p] = Some(v);
                search.used[v] = true;
            }
        }
    }
    let (lo, hi) = (k.min(n - k), n - k);
    // Windows that lie entirely inside the fixed ends.
    let fixed_ok = (0..=n - k)
        .step_by(s)
        .filter(|&a| (a..a + k).all(|q| q < lo || q >= hi))
        .all(|a| search.window_is_edge(a));
    if !fixed_ok {
        return Ok(None);
    }
    if !search.go(lo, hi)? {
        return Ok(None);
    }
    let order = search.slots.into_iter().map(|v| v.expect("filled")).collect();
    EllPath::new(order, k, ell).map(Some)
}

/// Variant with ordered (k-1)-set ends: the path must start with `first_set` and end with
/// `last_set`. Every single-vertex completion of each end is tried in increasing order.
pub fn find_ell_path_with_end_sets(
    f: &KGraph,
    ell: usize,
    first_set: &[usize],
    last_set: &[usize],
    budget: SearchBudget,
) -> Result<Option<EllPath>> {
    let k = f.k();
    if first_set.len() + 1 != k || last_set.len() + 1 != k {
        return Err(Error::arg(format!("end sets must have k - 1 = {} vertices", k - 1)));
    }
    for &v in f.completions(first_set) {
        let mut first = first_set.to_vec();
        first.push(v);
        for &u in f.completions(last_set) {
            let mut last = vec![u];
            last.extend_from_slice(last_set);
            if let Some(path) = find_ell_path_constrained(f, ell, &first, &last, budget)? {
                return Ok(Some(path));
            }
        }
    }
    Ok(None)
}

struct PathSearch<'a> {
    f: &'a KGraph,
    k: usize,
    s: usize,
    n: usize,
    slots: Vec<Option<usize>>,
    used: Vec<bool>,
    nodes: u64,
    budget: Option<u64>,
}

impl PathSearch<'_> {
    fn window_is_edge(&self, a: usize) -> bool {
        let mut buf = [0usize; crate::hypergraph::MAX_UNIFORMITY];
        for (j, slot) in buf[..self.k].iter_mut().enumerate() {
            *slot = self.slots[a + j].expect("window filled");
        }
        SetKey::from_unsorted(&buf[..self.k]).is_some_and(|key| self.f.has_edge_key(key))
    }

    fn windows_through(&self, p: usize) -> impl Iterator<Item = usize> {
        let lo = (p + 1).saturating_sub(self.k);
        let lo = lo.div_ceil(self.s) * self.s;
        let hi = p.min(self.n - self.k);
        (lo..=hi).step_by(self.s)
    }

    /// Vertices allowed at empty position `p`: completions of a window through `p` whose
    /// other positions are all filled, or every unused vertex if there is none.
    fn candidates(&self, p: usize) -> Vec<usize> {
        for a in self.windows_through(p) {
            if (a..a + self.k).all(|q| q == p || self.slots[q].is_some()) {
                let rest: Vec<usize> = (a..a + self.k)
                    .filter(|&q| q != p)
                    .map(|q| self.slots[q].expect("filled"))
                    .collect();
                return self
                    .f
                    .completions(&rest)
                    .iter()
                    .copied()
                    .filter(|&v| !self.used[v])
                    .collect();
            }
        }
        (0..self.n).filter(|&v| !self.used[v]).collect()
    }

    fn go(&mut self, lo: usize, hi: usize) -> Result<bool> {
        if lo >= hi {
            return Ok(true);
        }
        self.nodes += 1;
        if let Some(limit) = self.budget {
            if self.nodes > limit {
                return Err(Error::Exhausted {
                    stage: "constrained path search",
                    attempts: limit as usize,
                    detail: format!("node budget of {limit} spent"),
                });
            }
        }
        let left = self.candidates(lo);
        let right = if hi - 1 == lo { Vec::new() } else { self.candidates(hi - 1) };
        let (p, cands) = if hi - 1 == lo || left.len() <= right.len() {
            (lo, left)
        } else {
            (hi - 1, right)
        };
        for v in cands {
            self.slots[p] = Some(v);
            self.used[v] = true;
            let ok = self
                .windows_through(p)
                .filter(|&a| (a..a + self.k).all(|q| self.slots[q].is_some()))
                .all(|a| self.window_is_edge(a));
            if ok {
                let found = if p == lo { self.go(lo + 1, hi)? } else { self.go(lo, hi - 1)? };
                if found {
                    return Ok(true);
                }
            }
            self.slots[p] = None;
            self.used[v] = false;
        }
        Ok(false)
    }
}

/// Keeps every `(k - ℓ)`-th window of a tight path, starting from its first edge.
pub fn tight_path_to_ell_path(h: &KGraph, tight: &[usize], ell: usize) -> Result<EllPath> {
    let k = h.k();
    if tight.len() < k {
        return Err(Error::arg(format!("tight path on {} vertices is shorter than k = {k}", tight.len())));
    }
    if let Some(a) = (0..=tight.len() - k).find(|&a| !h.has_edge(&tight[a..a + k])) {
        return Err(Error::ContractViolation(format!(
            "window at {a} of the tight path is not an edge"
        )));
    }
    EllPath::new(tight.to_vec(), k, ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gen_complete;

    #[test]
    fn complete_nine() {
        let f = gen_complete(9, 3).unwrap();
        let p = find_ell_path_constrained(&f, 1, &[0, 1, 2], &[6, 7, 8], SearchBudget::unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(&p.ordering()[..3], &[0, 1, 2]);
        assert_eq!(&p.ordering()[6..], &[6, 7, 8]);
        assert!(p.violations(&f).is_empty());
    }

    #[test]
    fn single_edge_path() {
        let f = gen_complete(3, 3).unwrap();
        let p = find_ell_path_constrained(&f, 1, &[2, 0, 1], &[2, 0, 1], SearchBudget::unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(p.ordering(), &[2, 0, 1]);
        assert!(find_ell_path_constrained(&f, 1, &[2, 0, 1], &[0, 2, 1], SearchBudget::unlimited())
            .unwrap()
            .is_none());
    }

    #[test]
    fn overlapping_ends() {
        // n = 5, k = 3, ℓ = 1: the ends share position 2.
        let f = gen_complete(5, 3).unwrap();
        let p = find_ell_path_constrained(&f, 1, &[0, 1, 2], &[2, 3, 4], SearchBudget::unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(p.ordering(), &[0, 1, 2, 3, 4]);
        assert!(find_ell_path_constrained(&f, 1, &[0, 1, 2], &[3, 2, 4], SearchBudget::unlimited())
            .unwrap()
            .is_none());
    }

    #[test]
    fn misaligned_size() {
        let f = gen_complete(8, 3).unwrap();
        assert!(find_ell_path_constrained(&f, 1, &[0, 1, 2], &[5, 6, 7], SearchBudget::unlimited()).is_err());
    }

    #[test]
    fn budget_exhaustion() {
        // Vertex 4 lies in no edge, so no path exists; a tiny budget runs out first.
        let full = gen_complete(9, 3).unwrap();
        let f = KGraph::new(3, 9, full.edges().filter(|e| !e.contains(&4))).unwrap();
        assert!(matches!(
            find_ell_path_constrained(&f, 1, &[0, 1, 2], &[6, 7, 8], SearchBudget::nodes(1)),
            Err(Error::Exhausted { .. })
        ));
        assert!(find_ell_path_constrained(&f, 1, &[0, 1, 2], &[6, 7, 8], SearchBudget::unlimited())
            .unwrap()
            .is_none());
    }

    #[test]
    fn end_set_wrapper() {
        let f = gen_complete(7, 3).unwrap();
        let p = find_ell_path_with_end_sets(&f, 1, &[0, 1], &[5, 6], SearchBudget::unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(&p.ordering()[..2], &[0, 1]);
        assert_eq!(&p.ordering()[5..], &[5, 6]);
    }

    #[test]
    fn tight_conversion() {
        let h = gen_complete(8, 4).unwrap();
        let p = tight_path_to_ell_path(&h, &[0, 1, 2, 3, 4, 5, 6, 7], 2).unwrap();
        assert_eq!(p.edge_count(), 3);
        let h3 = gen_complete(5, 3).unwrap();
        let p = tight_path_to_ell_path(&h3, &[0, 1, 2, 3, 4], 1).unwrap();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![&[0, 1, 2][..], &[2, 3, 4][..]]);
        let same = tight_path_to_ell_path(&h3, &[0, 1, 2, 3, 4], 2).unwrap();
        assert_eq!(same.edge_count(), 3);
        assert!(tight_path_to_ell_path(&h3, &[0, 1, 2, 3], 1).is_err());
    }
}

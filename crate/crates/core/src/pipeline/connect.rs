use crate::error::{Error, Result};
use crate::hypergraph::{EllCycle, EllPath, KGraph, VertexSequence};
use crate::oracle::{find_ell_path_constrained, SearchBudget};

use super::connecting::ConnectingSystem;
use super::paths::PathSystem;

/// A Hamiltonian ℓ-cycle assembled from a path system and a connecting system.
#[derive(Clone, Debug, PartialEq)]
pub struct Connected {
    pub cycle: EllCycle,
    /// Connector `i` runs from the last edge of `P_i` through `W_i` to the first edge of
    /// `P_{i+1}`, in host labels.
    pub connectors: Vec<EllPath>,
    /// `min_i δ_{k-1}(H_i) / |H_i|` over the connector regions.
    pub predictor: f64,
}

/// Joins `P_1, …, P_m` into one cycle, routing `P_i` to `P_{i+1 mod m}` through `W_i`.
///
/// Connector `i` is a Hamiltonian ℓ-path of `H[W_i ∪ Y_i ∪ X_{i+1}]` whose first `k`
/// positions are `Y_i` (the last edge of `P_i`) and whose last `k` are `X_{i+1}` (the
/// first edge of `P_{i+1}`), both in path order. The cycle reads
/// `P_1, W_1 (connector order), P_2, …, P_m, W_m`.
pub fn connect_paths(
    h: &KGraph,
    ps: &PathSystem,
    cs: &ConnectingSystem,
    ell: usize,
    budget: SearchBudget,
) -> Result<Connected> {
    let (k, n) = (h.k(), h.n());
    let m = ps.m();
    if m == 0 || cs.m() != m {
        return Err(Error::arg(format!(
            "{m} paths but {} connector blocks",
            cs.m()
        )));
    }
    if ps.paths.iter().any(|p| p.k() != k || p.ell() != ell) {
        return Err(Error::arg("path shape differs from (k, ℓ)"));
    }
    let mut seen = vec![false; n];
    for &v in ps.covered.iter().chain(cs.blocks.iter().flatten()) {
        if v >= n || seen[v] {
            return Err(Error::arg(format!("vertex {v} is out of range or covered twice")));
        }
        seen[v] = true;
    }
    if let Some(v) = seen.iter().position(|&b| !b) {
        return Err(Error::arg(format!("vertex {v} lies in no path and no block")));
    }

    let mut connectors = Vec::with_capacity(m);
    let mut predictor = f64::INFINITY;
    for i in 0..m {
        let y = ps.paths[i].last_edge();
        let x = ps.paths[(i + 1) % m].first_edge();
        let region: Vec<usize> = cs.blocks[i].iter().chain(y).chain(x).copied().collect();
        let sub = h.induced(&region)?;
        let local = |e: &[usize]| -> Vec<usize> {
            e.iter().map(|&v| sub.to_local(v).expect("region vertex")).collect()
        };
        let size = sub.graph.n() as f64;
        predictor = predictor.min(sub.graph.min_codegree()? as f64 / size);
        let failed = |detail: String| Error::StageFailed {
            stage: "connector",
            index: i + 1,
            detail,
        };
        let found = find_ell_path_constrained(&sub.graph, ell, &local(y), &local(x), budget).map_err(|e| match e {
            Error::Exhausted { detail, .. } => failed(detail),
            Error::InvalidArgument(msg) => failed(msg),
            other => other,
        })?;
        let path = found.ok_or_else(|| failed(format!("no ℓ-path through a block of {} vertices", cs.t)))?;
        connectors.push(EllPath::new(sub.lift(path.ordering()), k, ell)?);
    }

    let mut order = Vec::with_capacity(n);
    for (p, c) in ps.paths.iter().zip(&connectors) {
        order.extend_from_slice(p.ordering());
        order.extend_from_slice(&c.ordering()[k..c.len() - k]);
    }
    let cycle = EllCycle::new(VertexSequence::cyclic(order)?, k, ell)?;
    let report = cycle.validate(h)?;
    if !report.is_ok() {
        return Err(Error::ContractViolation(format!(
            "assembled cycle has non-edge windows at {:?}",
            report.violations
        )));
    }
    Ok(Connected {
        cycle,
        connectors,
        predictor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gen_complete;

    fn system(h: &KGraph, paths: Vec<Vec<usize>>, blocks: Vec<Vec<usize>>) -> (PathSystem, ConnectingSystem) {
        let k = h.k();
        let ps = PathSystem::new(paths.into_iter().map(|p| EllPath::new(p, k, 1).unwrap()).collect()).unwrap();
        let t = blocks[0].len();
        let cs = ConnectingSystem {
            blocks,
            t,
            eta: 0.0,
            min_codegree: 0,
            tries: 1,
        };
        (ps, cs)
    }

    #[test]
    fn two_paths_on_complete_graph() {
        let h = gen_complete(16, 3).unwrap();
        let (ps, cs) = system(
            &h,
            vec![(0..5).collect(), (5..10).collect()],
            vec![vec![10, 11, 12], vec![13, 14, 15]],
        );
        let c = connect_paths(&h, &ps, &cs, 1, SearchBudget::unlimited()).unwrap();
        let ord = c.cycle.ordering();
        assert_eq!(ord.len(), 16);
        assert_eq!(&ord[..5], &[0, 1, 2, 3, 4]);
        assert_eq!(&ord[8..13], &[5, 6, 7, 8, 9]);
        let mut w1 = ord[5..8].to_vec();
        w1.sort_unstable();
        assert_eq!(w1, vec![10, 11, 12]);
        assert!(c.predictor > 0.5);
    }

    #[test]
    fn single_path_wraps() {
        let h = gen_complete(10, 3).unwrap();
        let (ps, cs) = system(&h, vec![(0..7).collect()], vec![vec![7, 8, 9]]);
        let c = connect_paths(&h, &ps, &cs, 1, SearchBudget::unlimited()).unwrap();
        assert_eq!(&c.cycle.ordering()[..7], &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(c.connectors.len(), 1);
        assert_eq!(&c.connectors[0].ordering()[..3], &[4, 5, 6]);
        assert_eq!(&c.connectors[0].ordering()[6..], &[0, 1, 2]);
    }

    #[test]
    fn path_order_changes_cycle() {
        let h = gen_complete(16, 3).unwrap();
        let blocks = vec![vec![10, 11, 12], vec![13, 14, 15]];
        let (a, cs) = system(&h, vec![(0..5).collect(), (5..10).collect()], blocks.clone());
        let (b, _) = system(&h, vec![(5..10).collect(), (0..5).collect()], blocks);
        let ca = connect_paths(&h, &a, &cs, 1, SearchBudget::unlimited()).unwrap();
        let cb = connect_paths(&h, &b, &cs, 1, SearchBudget::unlimited()).unwrap();
        assert_ne!(ca.cycle.canonical(), cb.cycle.canonical());
    }

    #[test]
    fn failure_names_connector() {
        // Remove every edge through vertex 15, so block 2 cannot be threaded.
        let full = gen_complete(16, 3).unwrap();
        let h = KGraph::new(3, 16, full.edges().filter(|e| !e.contains(&15))).unwrap();
        let (ps, cs) = system(
            &h,
            vec![(0..5).collect(), (5..10).collect()],
            vec![vec![10, 11, 12], vec![13, 14, 15]],
        );
        match connect_paths(&h, &ps, &cs, 1, SearchBudget::unlimited()) {
            Err(Error::StageFailed { stage, index, .. }) => assert_eq!((stage, index), ("connector", 2)),
            other => panic!("unexpected {other:?}"),
        }
        let err = connect_paths(&h, &ps, &cs, 1, SearchBudget::nodes(0)).unwrap_err();
        assert!(matches!(err, Error::StageFailed { .. }));
    }

    #[test]
    fn rejects_partial_cover() {
        let h = gen_complete(17, 3).unwrap();
        let (ps, cs) = system(
            &h,
            vec![(0..5).collect(), (5..10).collect()],
            vec![vec![10, 11, 12], vec![13, 14, 15]],
        );
        assert!(matches!(
            connect_paths(&h, &ps, &cs, 1, SearchBudget::unlimited()),
            Err(Error::InvalidArgument(_))
        ));
    }
}

//! Seeded instance generators.
//!
//! Every generator is a pure function of its arguments: the same seed gives the same
//! graph, and therefore the same bytes in the text format.

use itertools::Itertools;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{KGraph, SetKey};
use crate::rng::{self, Stage};

/// The complete k-graph on `n` vertices.
pub fn gen_complete(n: usize, k: usize) -> Result<KGraph> {
    let empty = KGraph::empty(k, n)?;
    let keys = (0..n)
        .combinations(k)
        .map(|e| SetKey::from_sorted(&e))
        .collect();
    Ok(KGraph::from_sorted_keys(empty.k(), n, keys))
}

/// Binomial random k-graph: each k-set, visited in lexicographic order, is kept
/// independently with probability `p`.
pub fn gen_binomial(n: usize, k: usize, p: f64, seed: u64) -> Result<KGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("edge probability {p} outside [0, 1]")));
    }
    KGraph::empty(k, n)?;
    let mut rng = rng::derive(seed, Stage::Generator, 0);
    let keys = (0..n)
        .combinations(k)
        .filter(|_| rng.gen::<f64>() < p)
        .map(|e| SetKey::from_sorted(&e))
        .collect();
    Ok(KGraph::from_sorted_keys(k, n, keys))
}

/// Knobs for [`gen_dirac`].
#[derive(Clone, Copy, Debug)]
pub struct DiracParams {
    pub delta: f64,
    pub max_tries: usize,
    /// Edge probability of the first try is `delta + initial_margin`.
    pub initial_margin: f64,
    /// Added to the margin after each failed try.
    pub margin_step: f64,
}

impl DiracParams {
    pub fn new(delta: f64) -> Self {
        DiracParams {
            delta,
            max_tries: 20,
            initial_margin: 0.05,
            margin_step: 0.05,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiracInstance {
    pub graph: KGraph,
    pub min_codegree: usize,
    /// Edge probability of the accepted sample.
    pub p: f64,
    /// Tries used, counting the accepted one.
    pub tries: usize,
}

/// Rejection-samples binomial k-graphs until the minimum co-degree reaches `delta * n`,
/// raising the edge probability after each failure.
pub fn gen_dirac(n: usize, k: usize, params: DiracParams, seed: u64) -> Result<DiracInstance> {
    let DiracParams {
        delta,
        max_tries,
        initial_margin,
        margin_step,
    } = params;
    if !(delta > 0.5 && delta < 1.0) {
        return Err(Error::arg(format!("Dirac ratio δ = {delta} outside (1/2, 1)")));
    }
    if n < k {
        return Err(Error::arg(format!("n = {n} is below k = {k}")));
    }
    let need = delta * n as f64;
    let mut margin = initial_margin;
    for attempt in 0..max_tries {
        let p = (delta + margin).min(1.0);
        let graph = gen_binomial(n, k, p, rng::child_seed(seed, Stage::Generator, attempt as u64))?;
        let min_codegree = graph.min_codegree()?;
        if min_codegree as f64 >= need {
            return Ok(DiracInstance {
                graph,
                min_codegree,
                p,
                tries: attempt + 1,
            });
        }
        margin += margin_step;
    }
    Err(Error::Exhausted {
        stage: "Dirac rejection sampling",
        attempts: max_tries,
        detail: format!(
            "no sample reached co-degree {need:.1}; raise the initial margin or margin step"
        ),
    })
}

/// The 3-graph on `X ∪ Y` with `X = {0, …, x-1}` whose edges are all triples meeting `X`.
pub fn gen_bipartite_split(n: usize, x: usize) -> Result<KGraph> {
    if x > n {
        return Err(Error::arg(format!("|X| = {x} exceeds n = {n}")));
    }
    KGraph::empty(3, n)?;
    let keys = (0..n)
        .combinations(3)
        .filter(|e| e[0] < x)
        .map(|e| SetKey::from_sorted(&e))
        .collect();
    Ok(KGraph::from_sorted_keys(3, n, keys))
}

/// `|X| = n/3 - 1`: every family of disjoint edges has at most `n/3 - 1` members.
pub fn gen_bipartite3(n: usize) -> Result<KGraph> {
    if n % 3 != 0 || n < 9 {
        return Err(Error::arg(format!("need 3 | n and n >= 9, got n = {n}")));
    }
    gen_bipartite_split(n, n / 3 - 1)
}

/// `|X| = ⌊(1/3 + ε) n⌋` with `|Y| = n - |X|`.
pub fn gen_h_epsilon(n: usize, eps: f64) -> Result<KGraph> {
    if !(eps > 0.0 && eps < 1.0 / 6.0) {
        return Err(Error::arg(format!("ε = {eps} outside (0, 1/6)")));
    }
    gen_bipartite_split(n, h_epsilon_x_size(n, eps))
}

/// Floor of `(1/3 + ε) n`, with a small tolerance so exact products such as
/// `(1/3 + 1/9) · 9 = 4` are not lost to rounding.
pub fn h_epsilon_x_size(n: usize, eps: f64) -> usize {
    let exact = n as f64 / 3.0 + eps * n as f64;
    ((exact + 1e-9).floor() as usize).min(n)
}

/// A generator family with its parameters, as named on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    Complete { n: usize, k: usize },
    Binomial { n: usize, k: usize, p: f64, seed: u64 },
    DiracRejection { n: usize, k: usize, delta: f64, seed: u64 },
    Bipartite3 { n: usize },
    HEpsilon { n: usize, eps: f64 },
}

impl GenSpec {
    pub fn generate(&self) -> Result<KGraph> {
        match *self {
            GenSpec::Complete { n, k } => gen_complete(n, k),
            GenSpec::Binomial { n, k, p, seed } => gen_binomial(n, k, p, seed),
            GenSpec::DiracRejection { n, k, delta, seed } => {
                gen_dirac(n, k, DiracParams::new(delta), seed).map(|d| d.graph)
            }
            GenSpec::Bipartite3 { n } => gen_bipartite3(n),
            GenSpec::HEpsilon { n, eps } => gen_h_epsilon(n, eps),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::write_instance;

    #[test]
    fn complete_counts() {
        assert_eq!(gen_complete(4, 3).unwrap().edge_count(), 4);
        assert_eq!(gen_complete(3, 3).unwrap().edge_count(), 1);
        assert_eq!(gen_complete(7, 3).unwrap().min_codegree().unwrap(), 5);
        assert_eq!(gen_complete(6, 4).unwrap().min_codegree().unwrap(), 3);
    }

    #[test]
    fn binomial_extremes_and_determinism() {
        assert_eq!(gen_binomial(8, 3, 1.0, 1).unwrap(), gen_complete(8, 3).unwrap());
        assert_eq!(gen_binomial(8, 3, 0.0, 1).unwrap().edge_count(), 0);
        let a = gen_binomial(12, 3, 0.5, 42).unwrap();
        let b = gen_binomial(12, 3, 0.5, 42).unwrap();
        assert_eq!(write_instance(&a), write_instance(&b));
        assert_ne!(a, gen_binomial(12, 3, 0.5, 43).unwrap());
        assert!(gen_binomial(8, 3, 1.5, 1).is_err());
    }

    #[test]
    fn binomial_edge_count_moments() {
        // C(20,3) = 1140, mean 570, sd sqrt(285).
        let sd = 285f64.sqrt();
        for seed in 0..100 {
            let m = gen_binomial(20, 3, 0.5, seed).unwrap().edge_count() as f64;
            assert!((m - 570.0).abs() <= 4.0 * sd, "seed {seed}: {m} edges");
        }
    }

    #[test]
    fn dirac_postcondition() {
        for seed in 0..5 {
            let d = gen_dirac(24, 3, DiracParams::new(0.55), seed).unwrap();
            assert!(d.graph.is_delta_dirac(0.55).unwrap());
            assert_eq!(d.graph.min_codegree().unwrap(), d.min_codegree);
        }
        let near = gen_dirac(10, 3, DiracParams::new(0.75), 3).unwrap();
        assert!(near.graph.is_delta_dirac(0.75).unwrap());
        assert!(gen_dirac(10, 3, DiracParams::new(0.4), 3).is_err());
    }

    #[test]
    fn dirac_exhaustion() {
        // δ = 0.95 on 10 vertices needs co-degree 9.5 > n - k + 1 = 8.
        let params = DiracParams {
            max_tries: 3,
            ..DiracParams::new(0.95)
        };
        assert!(matches!(gen_dirac(10, 3, params, 0), Err(Error::Exhausted { .. })));
    }

    #[test]
    fn bipartite3_structure() {
        let h = gen_bipartite3(9).unwrap();
        assert!(h.edges().all(|e| e[0] < 2));
        // C(9,3) - C(7,3)
        assert_eq!(h.edge_count(), 84 - 35);
        assert_eq!(h.min_codegree().unwrap(), 2);
        assert_eq!(h.codegree(&[5, 6]).unwrap(), 2);
        assert!(gen_bipartite3(10).is_err());
        assert!(gen_bipartite3(6).is_err());
        let h12 = gen_bipartite3(12).unwrap();
        assert_eq!(h12.edge_count(), 220 - 84);
    }

    #[test]
    fn h_epsilon_sizes() {
        assert_eq!(h_epsilon_x_size(9, 1.0 / 9.0), 4);
        assert_eq!(h_epsilon_x_size(30, 0.01), 10);
        let h = gen_h_epsilon(30, 0.01).unwrap();
        let density = h.edge_count() as f64 / 4060.0;
        assert!(density >= 5.0 / 9.0, "density {density}");
        assert!(gen_h_epsilon(9, 0.2).is_err());
        // |X| = n/3 - 1 reproduces the bipartite construction.
        assert_eq!(gen_bipartite_split(9, 2).unwrap(), gen_bipartite3(9).unwrap());
    }
}

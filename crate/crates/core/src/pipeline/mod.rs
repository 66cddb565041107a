//! The cycle sampler: parameters, connecting system, good partition, path system, connectors.

mod connect;
mod connecting;
mod params;
mod partition;
mod paths;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use connect::{connect_paths, Connected};
pub use connecting::{block_min_codegree, find_connecting_system, BlockWitness, ConnectingSystem};
pub use params::{solve_params, PipelineParams};
pub use partition::{default_dstar_threshold, sample_good_partition, GoodPartition};
pub use paths::{build_path_system, PathSystem, PathSystemBuild};

use crate::error::{Error, Result};
use crate::hypergraph::{CanonicalCycle, EllCycle, KGraph};
use crate::oracle::{run_in_pool, SearchBudget};
use crate::rng::{self, Stage};

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub target_m: usize,
    pub target_t: usize,
    pub eta_target: f64,
    /// Minimum `δ*` for a partition; `None` uses [`default_dstar_threshold`].
    pub dstar_threshold: Option<usize>,
    /// Tries for the connecting system and for each partition.
    pub max_tries: usize,
    /// Attempts per matching-extension step.
    pub extension_attempts: usize,
    /// Samples drawn at most, as a multiple of the requested count.
    pub sample_budget_factor: usize,
    pub connector_budget: SearchBudget,
    pub workers: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            target_m: 2,
            target_t: 5,
            eta_target: 0.2,
            dstar_threshold: Some(0),
            max_tries: 20,
            extension_attempts: 20,
            sample_budget_factor: 20,
            connector_budget: SearchBudget::nodes(2_000_000),
            workers: 1,
        }
    }
}

/// One accepted cycle with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCycle {
    pub sample_index: usize,
    pub cycle: EllCycle,
    pub paths: PathSystem,
    pub delta_star: usize,
    pub predictor: f64,
}

/// Counts over the samples that were consumed, in index order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    /// `δ_{k-1}(H) / n`.
    pub dirac_ratio: f64,
    /// Set when the host is not δ-Dirac for any δ > 1/2.
    pub dirac_warning: Option<String>,
    pub connecting_tries: usize,
    pub eta: Option<f64>,
    pub samples: usize,
    pub partition_tries: usize,
    pub partition_failures: usize,
    pub extension_attempts: usize,
    pub path_failures: usize,
    pub connect_failures: usize,
    pub dstar_min: Option<usize>,
    pub dstar_max: Option<usize>,
    pub predictor_min: Option<f64>,
    /// Cycles whose canonical form was already present.
    pub collisions: usize,
    /// Collisions coming from a different path system than the first occurrence.
    pub cross_system_collisions: usize,
    /// First error message of each failing stage.
    pub first_errors: BTreeMap<&'static str, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOutcome {
    pub params: PipelineParams,
    pub connecting: Option<ConnectingSystem>,
    pub cycles: Vec<SampledCycle>,
    pub diagnostics: Diagnostics,
    /// Why fewer than `count` cycles were returned.
    pub failure: Option<String>,
}

impl PipelineOutcome {
    pub fn is_complete(&self) -> bool {
        self.failure.is_none()
    }
}

enum Attempt {
    Partition(usize, Error),
    Paths(GoodPartition, Error),
    Connect(GoodPartition, PathSystemBuild, Error),
    Done(GoodPartition, PathSystemBuild, Connected),
}

fn run_sample(h: &KGraph, ell: usize, cs: &ConnectingSystem, rest: &[usize], threshold: usize, cfg: &PipelineConfig, seed: u64, index: usize) -> Attempt {
    let seed = rng::child_seed(seed, Stage::Sample, index as u64);
    let part = match sample_good_partition(h, rest, cs.m(), threshold, cfg.max_tries, seed) {
        Ok(p) => p,
        Err(e) => return Attempt::Partition(cfg.max_tries, e),
    };
    let built = match part.view(h).and_then(|view| build_path_system(h, &view, ell, seed, cfg.extension_attempts)) {
        Ok(b) => b,
        Err(e) => return Attempt::Paths(part, e),
    };
    match connect_paths(h, &built.system, cs, ell, cfg.connector_budget) {
        Ok(c) => Attempt::Done(part, built, c),
        Err(e) => Attempt::Connect(part, built, e),
    }
}

fn note(first: &mut BTreeMap<&'static str, String>, stage: &'static str, e: &Error) {
    first.entry(stage).or_insert_with(|| e.to_string());
}

/// Draws `count` Hamiltonian ℓ-cycles with pairwise distinct edge sets.
///
/// One connecting system is fixed for the run. Sample `i` uses its own seed derived from
/// `(seed, i)`: it draws a good partition of the remaining vertices, chains a path system
/// and threads connectors through the blocks. A failing sample is skipped. Samples are
/// evaluated in batches, possibly in parallel, and merged in index order, so the result
/// does not depend on `cfg.workers`.
///
/// Argument and parameter errors are returned as `Err`. A stage that cannot be completed
/// within the budgets yields `Ok` with the cycles found so far and `failure` set.
pub fn sample_ham_cycles(h: &KGraph, ell: usize, count: usize, seed: u64, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    let params = solve_params(h.n(), h.k(), ell, cfg.target_m, cfg.target_t)?;
    let mut diag = Diagnostics {
        dirac_ratio: h.min_codegree()? as f64 / h.n() as f64,
        ..Diagnostics::default()
    };
    if diag.dirac_ratio <= 0.5 {
        diag.dirac_warning = Some(format!(
            "δ_{{k-1}}(H)/n = {:.3} is not above 1/2; proceeding best-effort",
            diag.dirac_ratio
        ));
    }
    let mut outcome = PipelineOutcome {
        params,
        connecting: None,
        cycles: Vec::new(),
        diagnostics: diag,
        failure: None,
    };
    let cs = match find_connecting_system(h, params.m, params.t, cfg.eta_target, cfg.max_tries, seed) {
        Ok(cs) => cs,
        Err(e @ Error::Exhausted { .. }) => {
            outcome.diagnostics.connecting_tries = cfg.max_tries;
            outcome.failure = Some(e.to_string());
            return Ok(outcome);
        }
        Err(e) => return Err(e),
    };
    outcome.diagnostics.connecting_tries = cs.tries;
    outcome.diagnostics.eta = Some(cs.eta);
    let threshold = match cfg.dstar_threshold {
        Some(d) => d,
        None => default_dstar_threshold(h, params.m)?,
    };
    let covered = cs.covered();
    let rest: Vec<usize> = (0..h.n()).filter(|v| covered.binary_search(v).is_err()).collect();

    let budget = count.saturating_mul(cfg.sample_budget_factor.max(1));
    let batch = cfg.workers.max(1);
    let mut seen: BTreeMap<CanonicalCycle, usize> = BTreeMap::new();
    let mut next = 0;
    while outcome.cycles.len() < count && next < budget {
        let end = (next + batch).min(budget);
        let attempts: Vec<Attempt> = run_in_pool(cfg.workers, || {
            (next..end)
                .into_par_iter()
                .map(|i| run_sample(h, ell, &cs, &rest, threshold, cfg, seed, i))
                .collect()
        });
        for (i, attempt) in (next..end).zip(attempts) {
            if outcome.cycles.len() == count {
                break;
            }
            let d = &mut outcome.diagnostics;
            d.samples += 1;
            let part = match &attempt {
                Attempt::Partition(tries, e) => {
                    d.partition_tries += tries;
                    d.partition_failures += 1;
                    note(&mut d.first_errors, "partition", e);
                    continue;
                }
                Attempt::Paths(p, _) | Attempt::Connect(p, _, _) | Attempt::Done(p, _, _) => p,
            };
            d.partition_tries += part.tries;
            d.dstar_min = Some(d.dstar_min.map_or(part.delta_star, |x| x.min(part.delta_star)));
            d.dstar_max = Some(d.dstar_max.map_or(part.delta_star, |x| x.max(part.delta_star)));
            match attempt {
                Attempt::Partition(..) => unreachable!(),
                Attempt::Paths(_, e) => {
                    d.path_failures += 1;
                    note(&mut d.first_errors, "path system", &e);
                }
                Attempt::Connect(_, built, e) => {
                    d.extension_attempts += built.attempts;
                    d.connect_failures += 1;
                    note(&mut d.first_errors, "connect", &e);
                }
                Attempt::Done(part, built, connected) => {
                    d.extension_attempts += built.attempts;
                    d.predictor_min = Some(d.predictor_min.map_or(connected.predictor, |x| x.min(connected.predictor)));
                    let key = connected.cycle.canonical().clone();
                    if let Some(&prev) = seen.get(&key) {
                        d.collisions += 1;
                        if outcome.cycles[prev].paths != built.system {
                            d.cross_system_collisions += 1;
                        }
                        continue;
                    }
                    seen.insert(key, outcome.cycles.len());
                    outcome.cycles.push(SampledCycle {
                        sample_index: i,
                        cycle: connected.cycle,
                        paths: built.system,
                        delta_star: part.delta_star,
                        predictor: connected.predictor,
                    });
                }
            }
        }
        next = end;
    }
    if outcome.cycles.len() < count {
        let d = &outcome.diagnostics;
        let reasons = d
            .first_errors
            .iter()
            .map(|(stage, msg)| format!("{stage}: {msg}"))
            .collect::<Vec<_>>()
            .join("; ");
        outcome.failure = Some(format!(
            "{} of {count} cycles after {} samples ({} partition, {} path-system, {} connector failures){}{}",
            outcome.cycles.len(),
            d.samples,
            d.partition_failures,
            d.path_failures,
            d.connect_failures,
            if reasons.is_empty() { "" } else { "; first errors: " },
            reasons
        ));
    }
    outcome.connecting = Some(cs);
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gen_complete;

    #[test]
    fn complete_twelve() {
        let h = gen_complete(12, 3).unwrap();
        let cfg = PipelineConfig {
            target_m: 1,
            target_t: 3,
            ..PipelineConfig::default()
        };
        let out = sample_ham_cycles(&h, 1, 10, 7, &cfg).unwrap();
        assert!(out.is_complete(), "{:?}", out.failure);
        assert_eq!(out.cycles.len(), 10);
        let distinct: std::collections::BTreeSet<_> = out.cycles.iter().map(|c| c.cycle.canonical().clone()).collect();
        assert_eq!(distinct.len(), 10);
        for c in &out.cycles {
            assert!(c.cycle.validate(&h).unwrap().is_ok());
        }
        assert!(out.diagnostics.dirac_warning.is_none());
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let h = gen_complete(16, 3).unwrap();
        let one = sample_ham_cycles(&h, 1, 6, 3, &PipelineConfig::default()).unwrap();
        let four = sample_ham_cycles(&h, 1, 6, 3, &PipelineConfig { workers: 4, ..PipelineConfig::default() }).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn sparse_instance_fails_gracefully() {
        let h = KGraph::new(3, 16, [[0, 1, 2], [3, 4, 5]]).unwrap();
        let out = sample_ham_cycles(&h, 1, 2, 1, &PipelineConfig::default()).unwrap();
        assert!(out.cycles.is_empty());
        assert!(out.failure.unwrap().contains("connecting system"));
        assert!(out.diagnostics.dirac_warning.is_some());

        let loose = PipelineConfig {
            eta_target: 0.0,
            sample_budget_factor: 2,
            ..PipelineConfig::default()
        };
        let out = sample_ham_cycles(&h, 1, 2, 1, &loose).unwrap();
        assert!(out.cycles.is_empty());
        assert_eq!(out.diagnostics.samples, 4);
        assert!(out.failure.unwrap().contains("path system"));
    }

    #[test]
    fn tight_cycles_rejected() {
        let h = gen_complete(12, 3).unwrap();
        assert!(sample_ham_cycles(&h, 2, 1, 1, &PipelineConfig::default()).is_err());
    }
}

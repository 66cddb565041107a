//! Exhaustive counters used as ground truth for the formulas and the sampler.
//!
//! Everything here is exponential. Each entry point checks its instance against an
//! [`OracleConfig`] limit and refuses instead of running for hours.

mod cycles;
mod extensions;
mod matchings;
mod paths;
mod permanent;

pub use cycles::{count_ham_ell_cycles, enumerate_ham_ell_cycles, CycleCensus, CycleSet};
pub use extensions::{count_matching_extensions, enumerate_matching_extensions};
pub use matchings::{count_perfect_matchings, count_perfect_matchings_partite, maximum_matching};
pub use paths::{
    find_ell_path_constrained, find_ell_path_with_end_sets, tight_path_to_ell_path, SearchBudget,
};
pub use permanent::{permanent, perfect_matchings, MAX_PERMANENT_SIDE};

/// Hard ceiling on cycle censuses, whatever the configuration says.
pub const HARD_LIMIT_N: usize = 14;

/// Size limits and parallelism for the oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest vertex count accepted by the cycle census (at most [`HARD_LIMIT_N`]).
    pub limit_n: usize,
    /// Largest part size accepted by the partite matching counter.
    pub max_part_size: usize,
    /// Largest vertex count accepted by the general k-graph matching searches.
    pub max_matching_n: usize,
    /// Largest number of free permutation tuples a matching-extension count may visit.
    pub max_tuples: u128,
    /// Worker threads for root-split searches. Results do not depend on this.
    pub workers: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            limit_n: 12,
            max_part_size: 10,
            max_matching_n: 24,
            max_tuples: 5_000_000,
            workers: 1,
        }
    }
}

impl OracleConfig {
    pub fn with_workers(self, workers: usize) -> Self {
        OracleConfig { workers, ..self }
    }

    pub fn with_limit_n(self, limit_n: usize) -> Self {
        OracleConfig { limit_n, ..self }
    }
}

pub(crate) fn run_in_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    if workers <= 1 {
        return job();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

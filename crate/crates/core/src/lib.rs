//! Hamiltonian ℓ-cycles in k-uniform hypergraphs.
//!
//! * [`hypergraph`]: k-graph storage, co-degree queries, partite views, path and cycle checks.
//! * [`formulas`]: exact and log-space cycle counts.
//! * [`models`]: seeded instance generators.
//! * [`oracle`]: exhaustive counters used as ground truth.
//! * [`matching`]: random permutation tuples and matching extension.
//! * [`pipeline`]: the cycle sampler built from the pieces above.
//! * [`report`]: versioned CSV tables.

pub mod bipartite;
pub mod error;
pub mod formulas;
pub mod hypergraph;
pub mod matching;
pub mod models;
pub mod oracle;
pub mod pipeline;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use hypergraph::{KGraph, PartiteView, VertexSequence};

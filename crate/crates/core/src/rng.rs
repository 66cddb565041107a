use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags for the randomized stages, so each stage draws from its own ChaCha stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Stage {
    Generator = 1,
    Connecting = 2,
    Partition = 3,
    Extension = 4,
    MinDegree = 5,
    Sample = 6,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Deterministic generator for `(seed, stage, index)`. Distinct triples give independent
/// streams, which keeps parallel runs identical to sequential ones.
pub fn derive(seed: u64, stage: Stage, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_add(1).wrapping_mul(GOLDEN));
    rng.set_stream(stage as u64);
    rng
}

/// A child seed for a nested stage, drawn from `(seed, stage, index)`.
pub fn child_seed(seed: u64, stage: Stage, index: u64) -> u64 {
    use rand::RngCore;
    derive(seed, stage, index).next_u64()
}

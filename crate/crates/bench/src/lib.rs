//! Benchmark harness for the exact engines; see `benches/`.

use whittaker_core::random::VecSampler;
use whittaker_core::ModVec;

/// Fixed pseudo-random vectors of bounded weight.
pub fn fixtures(seed: u64, max_weight: u64, count: usize) -> Vec<ModVec> {
    let mut s = VecSampler::new(seed, max_weight, 4, |_| true);
    (0..count).map(|_| s.vector()).collect()
}

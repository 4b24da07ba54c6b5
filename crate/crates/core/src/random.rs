//! Seeded random test vectors.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::scalar::{frac, Scalar};
use crate::algebra::{enumerate_monomials, ModVec, Monomial};

/// Draws sparse vectors over a fixed pool of monomials.
pub struct VecSampler {
    rng: ChaCha8Rng,
    pool: Vec<Monomial>,
    max_terms: usize,
}

impl VecSampler {
    pub fn from_pool(seed: u64, pool: Vec<Monomial>, max_terms: usize) -> Self {
        assert!(!pool.is_empty(), "sampling pool must be nonempty");
        VecSampler { rng: ChaCha8Rng::seed_from_u64(seed), pool, max_terms: max_terms.max(1) }
    }

    /// Monomials of weight at most `max_weight` accepted by `keep`.
    pub fn new(seed: u64, max_weight: u64, max_terms: usize, keep: impl Fn(&Monomial) -> bool) -> Self {
        let pool = enumerate_monomials(max_weight, |_| true).into_iter().filter(|m| keep(m)).collect();
        VecSampler::from_pool(seed, pool, max_terms)
    }

    /// Nonzero rational with numerator in [-3, 3] and denominator in [1, 3].
    pub fn scalar(&mut self) -> Scalar {
        loop {
            let n = self.rng.gen_range(-3..=3);
            if n != 0 {
                return frac(n, self.rng.gen_range(1..=3));
            }
        }
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A nonzero vector with between 1 and `max_terms` terms.
    pub fn vector(&mut self) -> ModVec {
        let n = self.rng.gen_range(1..=self.max_terms.min(self.pool.len()));
        let picks: Vec<Monomial> = self.pool.choose_multiple(&mut self.rng, n).cloned().collect();
        let mut v = ModVec::zero();
        for m in picks {
            let c = self.scalar();
            v.add_term(m, c);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let a: Vec<ModVec> = {
            let mut s = VecSampler::new(7, 4, 3, |_| true);
            (0..5).map(|_| s.vector()).collect()
        };
        let mut s = VecSampler::new(7, 4, 3, |_| true);
        let b: Vec<ModVec> = (0..5).map(|_| s.vector()).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|v| !v.is_zero() && v.max_weight() <= 4));
    }
}

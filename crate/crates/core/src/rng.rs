//! Deterministic pseudo-random number generation.
//!
//! Every stochastic component in this crate (annealer moves, optimizer
//! restarts, randomized test instances) draws from [`SplitMix64`], seeded
//! explicitly. The generator and the seeding scheme below are part of the
//! crate's stability contract: outputs for a fixed seed never change across
//! releases, and test vectors are pinned in this module's tests.
//!
//! Seeding scheme: a run with user seed `s` constructs `SplitMix64::new(s)`
//! as the master stream. Independent substreams (one per restart, per batch,
//! ...) are seeded with consecutive `next_u64` draws from the master stream,
//! in index order.

/// SplitMix64 generator (Steele, Lea, Vigna). 64 bits of state, period 2^64.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1): the top 53 bits scaled by 2^-53.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform in 0..bound (bound > 0), by rejection-free modulo on 64 bits.
    ///
    /// The modulo bias is below 2^-32 for every bound used in this crate
    /// (bounds are at most a few hundred) and is accepted for simplicity;
    /// this choice is frozen along with the generator.
    pub fn next_below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    /// A fresh generator seeded from this stream.
    pub fn substream(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Pinned test vectors: the first outputs for seed 0 and seed
    // 0x123456789ABCDEF, as produced by the reference SplitMix64.
    #[test]
    fn test_vectors_seed_zero() {
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn test_vectors_nonzero_seed() {
        let mut rng = SplitMix64::new(0x0123_4567_89AB_CDEF);
        let first = rng.next_u64();
        let mut rng2 = SplitMix64::new(0x0123_4567_89AB_CDEF);
        assert_eq!(first, rng2.next_u64());
        // Regression-pinned value.
        assert_eq!(first, 0x157A_3807_A48F_AA9D);
    }

    #[test]
    fn unit_interval() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let x = rng.next_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn substreams_are_decorrelated_and_deterministic() {
        let mut master = SplitMix64::new(42);
        let mut a = master.substream();
        let mut b = master.substream();
        assert_ne!(a.next_u64(), b.next_u64());

        let mut master2 = SplitMix64::new(42);
        let mut a2 = master2.substream();
        assert_eq!(a2.next_u64(), SplitMix64::new(SplitMix64::new(42).next_u64()).next_u64());
        let _ = a;
    }
}

//! Small deterministic PRNG for the seeded verification and sampling suites.
//!
//! All sampled suites must replay bit-identically from a `u64` seed on every
//! platform, so we carry our own splitmix64 instead of pulling in an external
//! generator whose stream could change between releases.

/// splitmix64 stream; passes through every 64-bit state exactly once.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Derives an independent stream from a seed and a list of salts, so each
    /// grid cell or suite gets its own reproducible substream.
    pub fn derived(seed: u64, salts: &[u64]) -> Self {
        let mut rng = SplitMix64::new(seed);
        for &s in salts {
            let mixed = rng.next_u64() ^ s.wrapping_mul(0x9e37_79b9_7f4a_7c15);
            rng = SplitMix64::new(mixed);
        }
        rng
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[lo, hi]` (inclusive).
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        let span = hi - lo + 1;
        lo + self.next_u64() % span
    }
}

//! Minimal deterministic generator for measurement-noise injection.
//!
//! SplitMix64 keeps replay bit-identical across platforms without pulling a
//! random-number crate into the `no_std` build. The engine only needs a
//! stream of symmetric uniform draws, so that is all this exposes.

/// SplitMix64 state. Cheap to seed, full 64-bit period.
pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[-amplitude, amplitude]`.
    pub(crate) fn next_symmetric(&mut self, amplitude: f64) -> f64 {
        // Top 53 bits give a uniform value in [0, 1) at full f64 precision.
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        amplitude * (2.0 * unit - 1.0)
    }
}

//! Deterministic seeded PRNG.
//!
//! SplitMix64: a 64-bit counter advanced by the golden-gamma constant,
//! with a two-round xor-multiply output mix. The update is specified
//! bit-for-bit so that identical seeds yield identical sequences on every
//! platform:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z  = state
//! z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z  = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! out = z ^ (z >> 31)
//! ```
//!
//! Uniforms in [0, 1) take the top 53 bits of `out` scaled by 2⁻⁵³.

use super::{real, Real};

/// Seeded deterministic random stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    state: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Next uniform in [0, 1), using the top 53 bits.
    pub fn next_uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Generic-scalar uniform; goes through the f64 path so the draw
    /// sequence is scalar-type independent.
    pub fn next_real<T: Real>(&mut self) -> T {
        real(self.next_uniform())
    }
}

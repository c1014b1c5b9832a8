//! Minimal deterministic pseudo-random stream for reproducible parameter
//! sweeps (oracle checks want the same cases on every run and platform).

/// SplitMix64 generator.
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

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Random direction on the unit sphere (rejection sampled, then
    /// normalized).
    pub fn unit_vector(&mut self) -> [f64; 3] {
        loop {
            let v = [
                self.in_range(-1.0, 1.0),
                self.in_range(-1.0, 1.0),
                self.in_range(-1.0, 1.0),
            ];
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if norm > 1e-3 && norm <= 1.0 {
                return [v[0] / norm, v[1] / norm, v[2] / norm];
            }
        }
    }
}

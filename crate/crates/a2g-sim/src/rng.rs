//! Deterministic random sources.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood): the whole state is
//! one `u64`, the update is three shift-xor-multiply steps, and the output
//! stream is identical on every platform, so seeded runs are byte-stable.
//! Uniform doubles take the top 53 bits of each output word.
//!
//! Poisson counts use Knuth's product-of-uniforms method. The mean is split
//! into chunks of at most 500 so that `exp(-mean)` stays inside the normal
//! f64 range, and the chunk counts are summed (Poisson means are additive).

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform double in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Poisson-distributed count with the given mean.
    pub fn poisson(&mut self, mean: f64) -> u64 {
        assert!(
            mean >= 0.0 && mean.is_finite(),
            "poisson mean must be finite and >= 0"
        );
        let mut total = 0u64;
        let mut remaining = mean;
        while remaining > 0.0 {
            let chunk = remaining.min(500.0);
            total += self.poisson_chunk(chunk);
            remaining -= chunk;
        }
        total
    }

    fn poisson_chunk(&mut self, mean: f64) -> u64 {
        let limit = (-mean).exp();
        let mut k = 0u64;
        let mut p = 1.0;
        loop {
            k += 1;
            p *= self.next_f64();
            if p <= limit {
                return k - 1;
            }
        }
    }
}

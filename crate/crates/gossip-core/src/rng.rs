//! Deterministic pseudo-random numbers.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood's `splitmix64` finalizer,
//! the stream-seeding generator of the Java 8 `SplittableRandom` family). It
//! is pinned here rather than pulled from a crate so that traces are
//! bit-identical across platforms and toolchain updates. Streams are split by
//! hashing `(seed, stream)` through one update step, which is how per-trial
//! generators are derived in the simulator.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent stream derived from `(seed, stream)`.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut root = Self::new(seed);
        let a = root.next_u64();
        Self::new(a ^ stream.wrapping_mul(0x9e3779b97f4a7c15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in the open interval `(0, 1]`, safe to feed into `ln`.
    pub fn next_f64_open(&mut self) -> f64 {
        1.0 - self.next_f64()
    }

    /// Exponential waiting time with the given rate.
    pub fn next_exp(&mut self, rate: f64) -> f64 {
        -self.next_f64_open().ln() / rate
    }

    /// Index drawn from unnormalized nonnegative weights.
    pub fn next_categorical(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        let mut u = self.next_f64() * total;
        for (i, w) in weights.iter().enumerate() {
            u -= w;
            if u < 0.0 {
                return i;
            }
        }
        weights.len() - 1
    }

    /// Standard normal via Box-Muller (one value per call, deterministic).
    pub fn next_normal(&mut self) -> f64 {
        let u1 = self.next_f64_open();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

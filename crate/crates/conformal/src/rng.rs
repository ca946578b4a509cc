//! Deterministic random streams.
//!
//! All randomness in this crate flows through [`Stream`], a thin wrapper
//! around the ChaCha8 stream cipher keyed by a 64-bit seed. Independent
//! substreams are addressed through the cipher's 64-bit stream counter, so a
//! simulation trial `t` under seed `s` reads from `(s, t)` regardless of
//! thread scheduling or trial order. The derived quantities are fully
//! specified: bounded integers by rejection sampling on raw 64-bit words,
//! uniform doubles from the top 53 bits, Gaussians by Box-Muller.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// A deterministic random stream.
#[derive(Debug, Clone)]
pub struct Stream {
    rng: ChaCha8Rng,
    spare_gaussian: Option<f64>,
}

impl Stream {
    /// Stream 0 under `seed`.
    pub fn new(seed: u64) -> Self {
        Self::for_trial(seed, 0)
    }

    /// The substream addressed by `(seed, trial)`.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Stream {
            rng,
            spare_gaussian: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, 1)` from the top 53 bits of one word.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`; safe as a logarithm argument.
    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Standard Gaussian via Box-Muller, caching the spare variate.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        let u1 = self.uniform_open();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_gaussian = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Unbiased index in `[0, bound)` by rejection sampling.
    pub fn index(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "index bound must be positive");
        let bound = bound as u64;
        let threshold = (u64::MAX / bound) * bound;
        loop {
            let x = self.next_u64();
            if x < threshold {
                return (x % bound) as usize;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index(i + 1);
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u64> = {
            let mut s = Stream::for_trial(7, 3);
            (0..32).map(|_| s.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut s = Stream::for_trial(7, 3);
            (0..32).map(|_| s.next_u64()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn trial_streams_differ() {
        let mut s0 = Stream::for_trial(7, 0);
        let mut s1 = Stream::for_trial(7, 1);
        let w0: Vec<u64> = (0..8).map(|_| s0.next_u64()).collect();
        let w1: Vec<u64> = (0..8).map(|_| s1.next_u64()).collect();
        assert_ne!(w0, w1);
    }

    #[test]
    fn uniform_in_range() {
        let mut s = Stream::new(1);
        for _ in 0..1000 {
            let u = s.uniform();
            assert!((0.0..1.0).contains(&u));
            let v = s.uniform_open();
            assert!(v > 0.0 && v <= 1.0);
        }
    }

    #[test]
    fn gaussian_moments_roughly_standard() {
        let mut s = Stream::new(42);
        let n = 200_000;
        let (mut sum, mut sq) = (0.0, 0.0);
        for _ in 0..n {
            let z = s.gaussian();
            sum += z;
            sq += z * z;
        }
        let mean = sum / n as f64;
        let var = sq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn shuffle_is_a_permutation() {
        let mut s = Stream::new(5);
        let mut v: Vec<usize> = (0..100).collect();
        s.shuffle(&mut v);
        let mut sorted = v.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..100).collect::<Vec<_>>());
    }
}

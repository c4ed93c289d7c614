//! Uniform variate sources with draw accounting.

use std::marker::PhantomData;

use rand::distr::{Distribution, StandardUniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::Real;

/// A stream of uniform variates on the open interval (0, 1).
///
/// Contract:
/// * `next_uniform` never returns 0 or 1 (implementations redraw on boundary
///   values);
/// * `draw_count` increments by exactly one per delivered uniform;
/// * a seeded source replays the identical stream for the same seed.
///
/// A source is single-owner mutable state. For parallel generation give each
/// worker its own independently seeded source.
pub trait UniformSource<T> {
    /// Next uniform variate, strictly inside (0, 1).
    fn next_uniform(&mut self) -> T;

    /// Number of uniforms delivered so far.
    fn draw_count(&self) -> u64;
}

/// Deterministic, seedable uniform source backed by ChaCha8.
///
/// The stream is stable across platforms and runs for a given seed.
#[derive(Debug, Clone)]
pub struct SeededSource<T> {
    rng: ChaCha8Rng,
    delivered: u64,
    _scalar: PhantomData<T>,
}

impl<T> SeededSource<T> {
    /// Source seeded with `seed`.
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            delivered: 0,
            _scalar: PhantomData,
        }
    }
}

impl<T: Real> UniformSource<T> for SeededSource<T>
where
    StandardUniform: Distribution<T>,
{
    #[inline]
    fn next_uniform(&mut self) -> T {
        // StandardUniform covers [0, 1); redraw the zero boundary.
        loop {
            let u: T = StandardUniform.sample(&mut self.rng);
            if u > T::zero() {
                self.delivered += 1;
                return u;
            }
        }
    }

    #[inline]
    fn draw_count(&self) -> u64 {
        self.delivered
    }
}

/// Derive a per-cell seed from a base seed, splitmix64-style.
///
/// Used to give every (algorithm, alpha, repeat) cell of a sweep its own
/// reproducible stream.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

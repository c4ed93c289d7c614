//! Gamma variate generators for shape parameters in the open interval (0, 1).
//!
//! For shape `alpha` below one the gamma density is unbounded at the origin and
//! the usual large-shape methods do not apply. This crate implements three
//! acceptance-rejection generators built on the generalized exponential (GE)
//! distribution, whose closed-form CDF makes it a convenient envelope:
//!
//! * [`Algorithm::Alg1`] — plain rejection from the GE envelope,
//! * [`Algorithm::Alg2`] — the same proposal with rational squeeze bounds that
//!   resolve most accept/reject decisions without `powf`/`exp` calls,
//! * [`Algorithm::Alg3Star`] / [`Algorithm::Alg3Unit`] — a piecewise envelope
//!   (truncated GE body + exponential tail) split at a switch point `s`,
//!   with `s` either near-optimal or fixed at 1.
//!
//! The expected number of uniform pairs per output is `1/Γ(α+1)` for the first
//! two and the piecewise envelope density `S(α, s)` for the third.
//!
//! ```
//! use gamma01::{create_sampler, Algorithm};
//!
//! let mut sampler = create_sampler(Algorithm::Alg2, 0.3, 1.0, 42).unwrap();
//! let x = sampler.next();
//! assert!(x >= 0.0 && x.is_finite());
//! ```
//!
//! The numerical core is generic over the scalar type via [`Real`] (`f32` or
//! `f64`); the statistical verification in [`verify`] and the facade aliases
//! at the crate root are `f64`-based.

// Validation uses `!(x > 0)` so that NaN takes the error path.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};

pub mod sampler;
pub mod special;
pub mod squeeze;
pub mod uniform;
pub mod verify;

pub use sampler::{
    approx_switch_point, optimal_switch_point, sample_ge, scale, total_density, Algorithm,
    GammaSampler, PiecewiseConstants, SampleStats, SwitchPoint,
};
pub use special::{gamma_cdf, gamma_pdf, ge_cdf, ge_pdf, ln_gamma, ShapeParams};
pub use uniform::{derive_seed, SeededSource, UniformSource};

/// Floating-point scalar the samplers and special functions operate on.
pub trait Real: Float + FromPrimitive + Debug {}

impl Real for f32 {}
impl Real for f64 {}

/// Convert an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn real<T: Real>(value: f64) -> T {
    T::from_f64(value).expect("constant not representable in scalar type")
}

/// Errors reported by the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the function's domain.
    #[error("argument outside domain: {0}")]
    Domain(&'static str),
    /// Shape parameter outside the supported open interval (0, 1).
    #[error("shape parameter must lie strictly between 0 and 1")]
    ShapeOutOfRange,
    /// Scale parameter not a positive finite number.
    #[error("scale parameter must be positive and finite")]
    ScaleNotPositive,
    /// A series or continued fraction failed to converge.
    #[error("series or continued fraction did not converge")]
    Convergence,
    /// The root bracket did not contain a sign change.
    #[error("no sign change in root-finder bracket")]
    BracketFailure,
    /// Sample sequence was not sorted in nondecreasing order.
    #[error("samples must be sorted in nondecreasing order")]
    Unsorted,
    /// Sample sequence contained a NaN or infinity.
    #[error("samples must be finite")]
    NonFinite,
    /// Not enough samples for the requested statistic.
    #[error("too few samples: need at least {0}")]
    TooFewSamples(usize),
}

/// `f64` shape/scale parameters.
pub type ShapeParams64 = ShapeParams<f64>;
/// `f32` shape/scale parameters.
pub type ShapeParams32 = ShapeParams<f32>;
/// `f64` sampler driven by the built-in seeded uniform source.
pub type Sampler64 = GammaSampler<f64, SeededSource<f64>>;
/// `f32` sampler driven by the built-in seeded uniform source.
pub type Sampler32 = GammaSampler<f32, SeededSource<f32>>;

/// Build an `f64` sampler with the built-in seeded uniform source.
///
/// This is the main entry point. `Algorithm::Alg2` is the recommended default
/// for one-shot draws and `Algorithm::Alg3Unit` for bulk generation; see
/// [`Algorithm`].
pub fn create_sampler(
    algorithm: Algorithm,
    alpha: f64,
    lambda: f64,
    seed: u64,
) -> Result<Sampler64, Error> {
    GammaSampler::new(algorithm, alpha, lambda, seed)
}

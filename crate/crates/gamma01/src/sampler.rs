//! The three gamma variate generators, the switch-point optimizer, and the
//! sampler facade.
//!
//! All three generators share the same proposal mechanics: draw a pair
//! `(U1, U2)`, map `U1` through the inverse GE CDF to a candidate `x`, and
//! accept when `U2` falls below the acceptance ratio. The squeeze variants
//! first compare `U2` against the rational bounds in [`crate::squeeze`] and
//! only fall back to the exact `powf` test when the bounds cannot decide.

use crate::special::ShapeParams;
use crate::squeeze::{ge_accept_lower, ge_accept_upper, tail_accept_lower, tail_accept_upper};
use crate::uniform::{SeededSource, UniformSource};
use crate::{real, special, Error, Real};

/// Counters accumulated while sampling.
///
/// Every rejection-loop pass draws exactly one `(U1, U2)` pair, so
/// `uniforms_drawn == 2 * iterations` and the measured cost metric
/// `uniform_pairs_per_output` equals `iterations / outputs`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SampleStats {
    /// Uniform variates consumed.
    pub uniforms_drawn: u64,
    /// Rejection-loop passes (candidate proposals).
    pub iterations: u64,
    /// Candidates accepted by the cheap lower bound alone.
    pub squeeze_accepts: u64,
    /// Candidates rejected by the cheap upper bound alone.
    pub squeeze_rejects: u64,
    /// Exact acceptance tests evaluated (`powf` path).
    pub exact_evaluations: u64,
    /// Variates returned.
    pub outputs: u64,
}

impl SampleStats {
    /// Fresh, all-zero counters.
    pub fn new() -> Self {
        Self::default()
    }

    /// Reset all counters to zero.
    pub fn reset(&mut self) {
        *self = Self::default();
    }

    /// Measured uniform pairs consumed per output.
    ///
    /// Comparable to the theoretical envelope densities `1/Γ(α+1)` and
    /// `S(α, s)`. NaN until the first output.
    pub fn uniform_pairs_per_output(&self) -> f64 {
        self.iterations as f64 / self.outputs as f64
    }
}

/// Map `b = U^{1/α}` to the GE variate `x = -log(1 - b)`.
///
/// `log1p` keeps small candidates exact; `b` underflowing to zero yields
/// `x = 0`, the valid limit. Should `b` round up to 1 (not possible for
/// `f64` inputs below one, but `powf` is not correctly rounded for every
/// scalar type), the result is capped at `-ln(ε)`.
#[inline]
fn ge_from_power<T: Real>(b: T) -> T {
    if b < T::one() {
        -(-b).ln_1p()
    } else {
        -T::epsilon().ln()
    }
}

/// Draw a GE(α, 1) variate from a single uniform by CDF inversion:
/// `x = -log(1 - u^{1/α})`.
pub fn sample_ge<T: Real>(alpha: T, u: T) -> T {
    debug_assert!(u > T::zero() && u < T::one());
    ge_from_power(u.powf(alpha.recip()))
}

/// Scale a unit-scale variate: `λ·x`.
#[inline]
pub fn scale<T: Real>(x: T, lambda: T) -> T {
    lambda * x
}

/// Base rejection sampler: GE proposals, exact acceptance test every pass.
///
/// Expected uniform pairs per output: `1/Γ(α+1)`.
pub fn base_rejection<T, S>(p: &ShapeParams<T>, src: &mut S, stats: &mut SampleStats) -> T
where
    T: Real,
    S: UniformSource<T> + ?Sized,
{
    let inv_alpha = p.alpha().recip();
    let inv_beta = p.beta().recip();
    loop {
        let u1 = src.next_uniform();
        let u2 = src.next_uniform();
        stats.uniforms_drawn += 2;
        stats.iterations += 1;
        let b = u1.powf(inv_alpha);
        let x = ge_from_power(b);
        stats.exact_evaluations += 1;
        if u2.powf(inv_beta) * x <= b {
            stats.outputs += 1;
            return scale(x, p.lambda());
        }
    }
}

/// Squeeze-accelerated rejection sampler.
///
/// Same proposal as [`base_rejection`]; the rational bounds decide most
/// candidates and the decision is identical to the base sampler on the same
/// uniform stream, only cheaper.
pub fn squeeze_rejection<T, S>(p: &ShapeParams<T>, src: &mut S, stats: &mut SampleStats) -> T
where
    T: Real,
    S: UniformSource<T> + ?Sized,
{
    let inv_alpha = p.alpha().recip();
    let inv_beta = p.beta().recip();
    let beta = p.beta();
    loop {
        let u1 = src.next_uniform();
        let u2 = src.next_uniform();
        stats.uniforms_drawn += 2;
        stats.iterations += 1;
        let b = u1.powf(inv_alpha);
        let x = ge_from_power(b);
        if u2 <= ge_accept_lower(x, beta) {
            stats.squeeze_accepts += 1;
            stats.outputs += 1;
            return scale(x, p.lambda());
        }
        if u2 <= ge_accept_upper(x, beta) {
            stats.exact_evaluations += 1;
            if u2.powf(inv_beta) * x <= b {
                stats.outputs += 1;
                return scale(x, p.lambda());
            }
        } else {
            stats.squeeze_rejects += 1;
        }
    }
}

/// Switch-point choice for the piecewise envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchPoint {
    /// Near-optimal `s = 1.28 + 0.23α`.
    Approx,
    /// Fixed `s = 1`, which simplifies the inner loop.
    Unit,
}

/// Near-optimal switch point `s* = 1.28 + 0.23α`.
pub fn approx_switch_point<T: Real>(alpha: T) -> T {
    real::<T>(1.28) + real::<T>(0.23) * alpha
}

/// Stationarity condition of the envelope density in `s`:
/// `(1-e^{-s})^{α-1} + (α-1) s^{α-2} - s^{α-1}`.
fn density_stationarity<T: Real>(alpha: T, s: T) -> T {
    let one = T::one();
    let two = real::<T>(2.0);
    let one_minus_t = -(-s).exp_m1();
    one_minus_t.powf(alpha - one) + (alpha - one) * s.powf(alpha - two) - s.powf(alpha - one)
}

/// Switch point minimizing the envelope density, by bisection on [0.5, 3]
/// to an interval width of 1e-10 (or scalar resolution, whichever is
/// coarser).
pub fn optimal_switch_point<T: Real>(alpha: T) -> Result<T, Error> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::ShapeOutOfRange);
    }
    let tol = real::<T>(1e-10);
    let half = real::<T>(0.5);
    let mut lo = half;
    let mut hi = real::<T>(3.0);
    let f_lo = density_stationarity(alpha, lo);
    let f_hi = density_stationarity(alpha, hi);
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::BracketFailure);
    }
    for _ in 0..200 {
        let mid = half * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            break;
        }
        if density_stationarity(alpha, mid).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(half * (lo + hi))
}

/// Envelope density of the piecewise method:
/// `S(α, s) = ((1-e^{-s})^α + α s^{α-1} e^{-s}) / Γ(α+1)`.
///
/// This is the expected number of uniform pairs per output; always ≥ 1.
pub fn total_density<T: Real>(alpha: T, s: T) -> Result<T, Error> {
    if !(s > T::zero()) {
        return Err(Error::Domain("total_density requires s > 0"));
    }
    let one = T::one();
    let t = (-s).exp();
    let unnormalized = (one - t).powf(alpha) + alpha * s.powf(alpha - one) * t;
    Ok(unnormalized * (-special::ln_gamma(alpha + one)?).exp())
}

/// Precomputed constants for the piecewise-envelope sampler.
///
/// The part weights are stored without the common `1/Γ(α+1)` normalization,
/// which cancels in the ratios the sampler uses; [`total_density`] applies
/// the normalization separately for reporting.
#[derive(Debug, Clone, Copy)]
pub struct PiecewiseConstants<T> {
    alpha: T,
    beta: T,
    /// Switch point between the GE body and the exponential tail.
    s: T,
    /// `e^{-s}`.
    t: T,
    /// Left part weight `(1-t)^α`.
    left_weight: T,
    /// Right part weight `α t s^{α-1}`.
    right_weight: T,
    /// `left_weight + right_weight`.
    total_weight: T,
    /// Probability of proposing from the left part.
    left_prob: T,
    /// `total_weight / right_weight`, rescales the leftover uniform into (0, 1].
    tail_rescale: T,
    unit_switch: bool,
}

impl<T: Real> PiecewiseConstants<T> {
    /// Compute the constants once for a given shape and switch-point mode.
    pub fn new(alpha: T, mode: SwitchPoint) -> Result<Self, Error> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(Error::ShapeOutOfRange);
        }
        let one = T::one();
        let (s, t, s_pow) = match mode {
            SwitchPoint::Approx => {
                let s = approx_switch_point(alpha);
                ((s), (-s).exp(), s.powf(alpha - one))
            }
            SwitchPoint::Unit => (one, one.exp().recip(), one),
        };
        let left_weight = (one - t).powf(alpha);
        let right_weight = alpha * t * s_pow;
        let total_weight = left_weight + right_weight;
        Ok(Self {
            alpha,
            beta: one - alpha,
            s,
            t,
            left_weight,
            right_weight,
            total_weight,
            left_prob: left_weight / total_weight,
            tail_rescale: total_weight / right_weight,
            unit_switch: matches!(mode, SwitchPoint::Unit),
        })
    }

    /// Shape parameter.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Switch point `s`.
    pub fn switch_point(&self) -> T {
        self.s
    }

    /// `e^{-s}`.
    pub fn exp_neg_switch(&self) -> T {
        self.t
    }

    /// Unnormalized left part weight `(1-e^{-s})^α`.
    pub fn left_weight(&self) -> T {
        self.left_weight
    }

    /// Unnormalized right part weight `α e^{-s} s^{α-1}`.
    pub fn right_weight(&self) -> T {
        self.right_weight
    }

    /// Sum of the part weights.
    pub fn total_weight(&self) -> T {
        self.total_weight
    }

    /// Probability of proposing from the GE body.
    pub fn left_prob(&self) -> T {
        self.left_prob
    }

    /// Rescale factor for the tail branch uniform.
    pub fn tail_rescale(&self) -> T {
        self.tail_rescale
    }

    /// True when built with [`SwitchPoint::Unit`].
    pub fn unit_switch(&self) -> bool {
        self.unit_switch
    }
}

/// Piecewise-envelope rejection sampler (unit scale).
///
/// With probability `left_prob` the candidate comes from the GE body
/// truncated to `[0, s]` (reusing `total_weight · U1` as the inversion
/// uniform); otherwise from the exponential tail shifted to `[s, ∞)`
/// (reusing the rescaled leftover of `U1`). Both branches run their squeeze
/// bounds before the exact test. Expected uniform pairs per output:
/// `S(α, s)`.
pub fn piecewise_rejection<T, S>(
    c: &PiecewiseConstants<T>,
    src: &mut S,
    stats: &mut SampleStats,
) -> T
where
    T: Real,
    S: UniformSource<T> + ?Sized,
{
    let one = T::one();
    let inv_alpha = c.alpha.recip();
    let inv_beta = c.beta.recip();
    let beta = c.beta;
    loop {
        let u1 = src.next_uniform();
        let u2 = src.next_uniform();
        stats.uniforms_drawn += 2;
        stats.iterations += 1;
        if u1 <= c.left_prob {
            let b = (c.total_weight * u1).powf(inv_alpha);
            let x = ge_from_power(b);
            if u2 <= ge_accept_lower(x, beta) {
                stats.squeeze_accepts += 1;
                stats.outputs += 1;
                return x;
            }
            if u2 <= ge_accept_upper(x, beta) {
                stats.exact_evaluations += 1;
                if u2.powf(inv_beta) * x <= b {
                    stats.outputs += 1;
                    return x;
                }
            } else {
                stats.squeeze_rejects += 1;
            }
        } else {
            let v = c.tail_rescale * (u1 - c.left_prob);
            if v <= T::zero() {
                // u1 landed so close to left_prob that the rescaled
                // uniform rounded to zero; retry the pass.
                continue;
            }
            let (x, y) = if c.unit_switch {
                let x = one - v.ln();
                (x, x)
            } else {
                let x = c.s - v.ln();
                (x, x / c.s)
            };
            if u2 <= tail_accept_lower(y, beta) {
                stats.squeeze_accepts += 1;
                stats.outputs += 1;
                return x;
            }
            if u2 <= tail_accept_upper(y, beta) {
                stats.exact_evaluations += 1;
                if u2 <= y.powf(-beta) {
                    stats.outputs += 1;
                    return x;
                }
            } else {
                stats.squeeze_rejects += 1;
            }
        }
    }
}

/// Generator identifiers as exposed on the CLI and in result files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Base GE rejection sampler.
    Alg1,
    /// Squeeze-accelerated sampler; best default for one-shot draws.
    Alg2,
    /// Piecewise envelope with the near-optimal switch point.
    Alg3Star,
    /// Piecewise envelope with `s = 1`; best default for bulk draws.
    Alg3Unit,
}

impl Algorithm {
    /// All four generators, in id order.
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Alg1,
        Algorithm::Alg2,
        Algorithm::Alg3Star,
        Algorithm::Alg3Unit,
    ];

    /// Recommended default for repeated one-shot draws.
    pub const DEFAULT_SINGLE: Algorithm = Algorithm::Alg2;

    /// Recommended default for bulk generation.
    pub const DEFAULT_BULK: Algorithm = Algorithm::Alg3Unit;

    /// Stable string id (`alg1`, `alg2`, `alg3-star`, `alg3-unit`).
    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::Alg1 => "alg1",
            Algorithm::Alg2 => "alg2",
            Algorithm::Alg3Star => "alg3-star",
            Algorithm::Alg3Unit => "alg3-unit",
        }
    }

    /// Parse a string id.
    pub fn from_id(id: &str) -> Option<Algorithm> {
        match id {
            "alg1" => Some(Algorithm::Alg1),
            "alg2" => Some(Algorithm::Alg2),
            "alg3-star" | "alg3_star" => Some(Algorithm::Alg3Star),
            "alg3-unit" | "alg3_unit" => Some(Algorithm::Alg3Unit),
            _ => None,
        }
    }

    /// Switch-point mode for the piecewise variants.
    pub fn switch_point(&self) -> Option<SwitchPoint> {
        match self {
            Algorithm::Alg1 | Algorithm::Alg2 => None,
            Algorithm::Alg3Star => Some(SwitchPoint::Approx),
            Algorithm::Alg3Unit => Some(SwitchPoint::Unit),
        }
    }

    /// Theoretical uniform pairs per output: `1/Γ(α+1)` for the
    /// single-envelope samplers, `S(α, s)` for the piecewise ones.
    pub fn theoretical_pairs_per_output<T: Real>(&self, alpha: T) -> Result<T, Error> {
        match self.switch_point() {
            None => Ok(special::ln_gamma(alpha + T::one())?.neg().exp()),
            Some(SwitchPoint::Approx) => total_density(alpha, approx_switch_point(alpha)),
            Some(SwitchPoint::Unit) => total_density(alpha, T::one()),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug)]
enum Kernel<T> {
    Base,
    Squeeze,
    Piecewise(PiecewiseConstants<T>),
}

/// A configured generator bound to a uniform source, with running statistics.
#[derive(Debug)]
pub struct GammaSampler<T: Real, S = SeededSource<T>> {
    algorithm: Algorithm,
    params: ShapeParams<T>,
    kernel: Kernel<T>,
    source: S,
    stats: SampleStats,
}

impl<T: Real> GammaSampler<T, SeededSource<T>>
where
    SeededSource<T>: UniformSource<T>,
{
    /// Sampler driven by the built-in seeded source.
    pub fn new(algorithm: Algorithm, alpha: T, lambda: T, seed: u64) -> Result<Self, Error> {
        Self::with_source(algorithm, alpha, lambda, SeededSource::new(seed))
    }
}

impl<T: Real, S: UniformSource<T>> GammaSampler<T, S> {
    /// Sampler driven by a caller-provided uniform source.
    pub fn with_source(
        algorithm: Algorithm,
        alpha: T,
        lambda: T,
        source: S,
    ) -> Result<Self, Error> {
        let params = ShapeParams::new(alpha, lambda)?;
        let kernel = match algorithm {
            Algorithm::Alg1 => Kernel::Base,
            Algorithm::Alg2 => Kernel::Squeeze,
            Algorithm::Alg3Star => {
                Kernel::Piecewise(PiecewiseConstants::new(alpha, SwitchPoint::Approx)?)
            }
            Algorithm::Alg3Unit => {
                Kernel::Piecewise(PiecewiseConstants::new(alpha, SwitchPoint::Unit)?)
            }
        };
        Ok(Self {
            algorithm,
            params,
            kernel,
            source,
            stats: SampleStats::new(),
        })
    }

    /// Draw one gamma variate.
    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> T {
        match &self.kernel {
            Kernel::Base => base_rejection(&self.params, &mut self.source, &mut self.stats),
            Kernel::Squeeze => squeeze_rejection(&self.params, &mut self.source, &mut self.stats),
            Kernel::Piecewise(c) => scale(
                piecewise_rejection(c, &mut self.source, &mut self.stats),
                self.params.lambda(),
            ),
        }
    }

    /// Draw `n` variates.
    pub fn next_batch(&mut self, n: usize) -> Vec<T> {
        (0..n).map(|_| self.next()).collect()
    }

    /// Running counters.
    pub fn stats(&self) -> &SampleStats {
        &self.stats
    }

    /// Zero the counters (the source's lifetime draw count is unaffected).
    pub fn reset_stats(&mut self) {
        self.stats.reset();
    }

    /// The generator this sampler runs.
    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    /// Shape/scale parameters.
    pub fn params(&self) -> &ShapeParams<T> {
        &self.params
    }

    /// Piecewise constants, for the two piecewise variants.
    pub fn piecewise_constants(&self) -> Option<&PiecewiseConstants<T>> {
        match &self.kernel {
            Kernel::Piecewise(c) => Some(c),
            _ => None,
        }
    }

    /// The underlying uniform source.
    pub fn source(&self) -> &S {
        &self.source
    }
}

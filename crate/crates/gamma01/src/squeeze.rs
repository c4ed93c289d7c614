//! Rational squeeze bounds for the two acceptance ratios.
//!
//! Each bound costs a handful of arithmetic operations and one division, so
//! the samplers can resolve most accept/reject decisions without `powf` or
//! `exp`. The samplers call these functions directly; the sandwich property
//! tests therefore exercise exactly the expressions used on the hot path.
//!
//! All four bounds are exact rational expressions; equality holds at `x = 0`
//! (respectively `y = 1`) in exact float arithmetic, so no epsilon slack is
//! needed when testing the sandwiches.

use crate::Real;

/// Lower squeeze bound `(4 - βx)/(4 + βx)` for the GE acceptance ratio.
///
/// Valid for `x ≥ 0`, `0 < β < 1`. Negative for `x > 4/β`, which is still a
/// correct lower bound on a positive ratio.
#[inline]
pub fn ge_accept_lower<T: Real>(x: T, beta: T) -> T {
    debug_assert!(x >= T::zero());
    let four = T::from_f64(4.0).unwrap();
    let bx = beta * x;
    (four - bx) / (four + bx)
}

/// Upper squeeze bound `(4 + (1-β)x)/(4 + (1+β)x)` for the GE acceptance
/// ratio, in (0, 1].
#[inline]
pub fn ge_accept_upper<T: Real>(x: T, beta: T) -> T {
    debug_assert!(x >= T::zero());
    let four = T::from_f64(4.0).unwrap();
    let one = T::one();
    (four + (one - beta) * x) / (four + (one + beta) * x)
}

/// Lower squeeze bound `1/(1 + β(y-1))` for the tail acceptance ratio
/// `y^{-β}`, valid for `y ≥ 1`, in (0, 1].
#[inline]
pub fn tail_accept_lower<T: Real>(y: T, beta: T) -> T {
    debug_assert!(y >= T::one());
    (T::one() + beta * (y - T::one())).recip()
}

/// Upper squeeze bound `((1+β) + (1-β)y)/((1-β) + (1+β)y)` for the tail
/// acceptance ratio `y^{-β}`, valid for `y ≥ 1`, in (0, 1].
#[inline]
pub fn tail_accept_upper<T: Real>(y: T, beta: T) -> T {
    debug_assert!(y >= T::one());
    let one = T::one();
    ((one + beta) + (one - beta) * y) / ((one - beta) + (one + beta) * y)
}

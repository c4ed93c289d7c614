//! Shared test support: independent quadrature oracles.
//!
//! Everything here is deliberately independent of the library's special
//! function implementations — these routines compute the reference integrals
//! from scratch so the tests check the library against first principles.

#![allow(dead_code)]

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth > 50 || delta.abs() < 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1)
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 0)
}

/// Trapezoid rule on a fixed step; step-halved until two successive
/// refinements agree to `tol` relative.
fn refined_trapezoid(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let mut h = 0.2;
    let mut prev = f64::NAN;
    for _ in 0..5 {
        let n = ((hi - lo) / h).ceil() as usize;
        let hh = (hi - lo) / n as f64;
        let mut sum = 0.5 * (f(lo) + f(hi));
        for i in 1..n {
            sum += f(lo + i as f64 * hh);
        }
        let value = sum * hh;
        if (value - prev).abs() <= tol * value.abs() {
            return value;
        }
        prev = value;
        h /= 2.0;
    }
    prev
}

/// Γ(a) by quadrature of ∫₀^∞ t^{a-1} e^{-t} dt.
///
/// Substituting t = e^w turns the integrand into exp(a·w - e^w), which is
/// smooth and decays exponentially in both directions, where the trapezoid
/// rule converges geometrically.
pub fn gamma_quadrature(a: f64) -> f64 {
    assert!(a > 0.0);
    let lo = -45.0 / a - 5.0;
    let hi = 5.5;
    let f = move |w: f64| {
        let arg = a * w - w.exp();
        if arg > -745.0 {
            arg.exp()
        } else {
            0.0
        }
    };
    refined_trapezoid(&f, lo, hi, 1e-14)
}

/// Lower incomplete gamma ∫₀^x t^{a-1} e^{-t} dt by quadrature, for 0 < a ≤ 1.
///
/// Substituting t = x·v^{1/a} removes the endpoint singularity:
/// the integral becomes (x^a / a) ∫₀^1 exp(-x v^{1/a}) dv.
pub fn lower_incomplete_quadrature(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && a <= 1.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    let inv_a = 1.0 / a;
    let g = move |v: f64| (-x * v.powf(inv_a)).exp();
    (x.powf(a) / a) * adaptive_simpson(&g, 0.0, 1.0, 1e-13)
}

/// Regularized lower incomplete gamma P(a, x) from the two quadratures.
pub fn reg_lower_gamma_quadrature(a: f64, x: f64) -> f64 {
    lower_incomplete_quadrature(a, x) / gamma_quadrature(a)
}

/// ∫₀^∞ of the generalized exponential density by exp-transformed trapezoid.
pub fn ge_total_mass_quadrature(alpha: f64) -> f64 {
    let f = move |w: f64| {
        let x = w.exp();
        let one_minus = -(-x).exp_m1();
        alpha * one_minus.powf(alpha - 1.0) * (-x).exp() * x
    };
    let lo = -40.0 / alpha - 5.0;
    refined_trapezoid(&f, lo, 5.5, 1e-14)
}

/// The eleven-point shape grid used by the verification suite.
pub const ALPHA_GRID: [f64; 11] = [0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99];

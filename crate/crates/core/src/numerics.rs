//! Scalar root finding and the transcendental solver `solve_t1` that the
//! closed-form drum and the catenoid construction both depend on.

use crate::error::{Error, Result};

/// Default absolute tolerance on the root argument.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Iteration cap for the bracketed solver. Reaching it signals a caller bug.
pub const MAX_ITER: usize = 200;

/// A sign-change interval: `f(lo)` and `f(hi)` have strictly opposite signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Validates the bracket invariants (`lo < hi`, opposite signs).
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) || !(f_lo * f_hi < 0.0) {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends and builds the bracket.
    pub fn try_from_fn<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        Bracket::new(lo, hi, f(lo), f(hi))
    }
}

/// Expands `[lo, hi]` geometrically upwards (doubling the width) until the
/// function changes sign. `f(lo)` must already have a fixed sign.
pub fn expand_upward<F: Fn(f64) -> f64>(f: F, lo: f64, mut hi: f64) -> Result<Bracket> {
    let f_lo = f(lo);
    let mut f_hi = f(hi);
    for _ in 0..MAX_ITER {
        if f_lo * f_hi < 0.0 {
            return Bracket::new(lo, hi, f_lo, f_hi);
        }
        hi = lo + (hi - lo) * 2.0;
        f_hi = f(hi);
    }
    Err(Error::NoSignChange { lo, hi, f_lo, f_hi })
}

/// Finds the root of `f` inside `bracket` by bisection with a bounded
/// secant/inverse-quadratic acceleration (Brent's method). Deterministic for
/// identical inputs; the bracket width at return is at most `tol`.
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    let eps = f64::EPSILON;
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    if !(fa * fb < 0.0) {
        return Err(Error::NoSignChange { lo: a, hi: b, f_lo: fa, f_hi: fb });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * eps * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        // Interpolation only when the previous step was large enough and all
        // function values are finite; otherwise fall back to bisection.
        if e.abs() >= tol1 && fa.abs() > fb.abs() && fa.is_finite() && fb.is_finite() && fc.is_finite() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += if xm > 0.0 { tol1 } else { -tol1 };
        }
        fb = f(b);
    }
    Err(Error::NoConvergence(MAX_ITER))
}

/// Solves `t = cosh(t + a) e^{-(t+a)}`, i.e. `t = (1 + e^{-2(t+a)}) / 2`,
/// for its unique root `t1(a) > 1/2`. The companion root satisfies
/// `t2(a) = solve_t1(-a)`.
///
/// The residual is strictly increasing in `t`, so the root is bracketed by
/// `[1/2, 1/2 + w]` with `w` doubled until the sign changes.
pub fn solve_t1(a: f64) -> f64 {
    let f = |t: f64| t - 0.5 * (1.0 + (-2.0 * (t + a)).exp());
    // analytically f(1/2) < 0; when it rounds to zero the root is 1/2 to
    // machine precision (large a)
    if f(0.5) >= 0.0 {
        return 0.5;
    }
    let bracket = expand_upward(f, 0.5, 1.5).expect("residual is increasing and crosses zero");
    find_root(f, bracket, DEFAULT_TOL).expect("bracketed root must converge")
}

/// Locates the maximum of a unimodal function on `[lo, hi]` by golden-section
/// search; returns `(argmax, max)` once the interval shrinks below `tol`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

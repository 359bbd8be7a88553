//! Closed-form spectrum of the two-circle capped-cylinder "drum" and the
//! explicit optimisation that singles out the critical drum.
//!
//! A drum is a flat cylinder of length T with two disk caps; only the
//! boundary densities f(0), f(T) enter the spectrum. Mode 0 contributes
//! `tau = 0` and `tau_0^+ = (f0 + fT) / (T f0 fT)`; every mode n >= 1
//! contributes the quadratic-branch pair `tau_n^-` and `tau_n^+`. The first
//! positive eigenvalue is `min(tau_0^+, tau_1^-)`, and the two branches
//! cross at a unique length T(alpha) where the multiplicity jumps to 3.

use serde::{Deserialize, Serialize};

use crate::cylinder::CircleConfig;
use crate::error::{Error, Result};
use crate::numerics::{self, expand_upward, find_root, golden_section_max, solve_t1};

/// Boundary data of a drum: densities at the two rims and cylinder length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrumParams {
    pub f0: f64,
    pub f_t: f64,
    pub t: f64,
}

impl DrumParams {
    pub fn new(f0: f64, f_t: f64, t: f64) -> Result<Self> {
        if !(f0 > 0.0 && f_t > 0.0 && t > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "drum parameters must be positive (f0 = {f0}, fT = {f_t}, T = {t})"
            )));
        }
        Ok(DrumParams { f0, f_t, t })
    }

    /// The equivalent cylinder configuration (weights proportional to the
    /// densities) together with the mass factor `f0 + fT`: eigenvalues of
    /// the normalized configuration are the drum eigenvalues times that
    /// factor.
    pub fn to_config(self) -> (CircleConfig, f64) {
        let scale = self.f0 + self.f_t;
        let config = CircleConfig::new(vec![self.t], vec![self.f0 / scale, self.f_t / scale])
            .expect("positive drum parameters yield a valid configuration");
        (config, scale)
    }
}

/// The critical-drum record traced out by the parameter `a`: cap radii
/// roots `t1 = solve_t1(a)`, `t2 = solve_t1(-a)`, length `T = t1 + t2`,
/// density ratio `alpha = t2/t1`, and the objective `F = 1/t1 + 1/t2` whose
/// 2 pi multiple is the normalized first eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrumProfile {
    pub a: f64,
    pub t1: f64,
    pub t2: f64,
    pub t: f64,
    pub alpha: f64,
    pub f: f64,
    pub tau1_bar: f64,
}

/// Evaluates the critical-drum family at parameter `a`.
pub fn drum_profile(a: f64) -> DrumProfile {
    let t1 = solve_t1(a);
    let t2 = solve_t1(-a);
    let f = 1.0 / t1 + 1.0 / t2;
    DrumProfile {
        a,
        t1,
        t2,
        t: t1 + t2,
        alpha: t2 / t1,
        f,
        tau1_bar: 2.0 * std::f64::consts::PI * f,
    }
}

/// `sinh(x) e^{-x} = (1 - e^{-2x}) / 2`, the overflow-free combination that
/// appears in the discriminant.
fn sinh_exp_neg(x: f64) -> f64 {
    0.5 * (1.0 - (-2.0 * x).exp())
}

/// Discriminant core `(f0 + fT)^2 - 8 f0 fT sinh(nT) e^{-nT}`; the paper's
/// discriminant equals this times `n^2 e^{2nT}`.
fn discriminant_core(p: DrumParams, n: usize) -> f64 {
    let s = p.f0 + p.f_t;
    s * s - 8.0 * p.f0 * p.f_t * sinh_exp_neg(n as f64 * p.t)
}

/// The mode-0 positive eigenvalue `tau_0^+`.
pub fn tau0_plus(p: DrumParams) -> f64 {
    (p.f0 + p.f_t) / (p.t * p.f0 * p.f_t)
}

/// The branch pair `(tau_n^-, tau_n^+)` for a mode n >= 1, computed in the
/// rationalized exponential form that stays finite for large nT.
pub fn tau_n_pair(p: DrumParams, n: usize) -> Result<(f64, f64)> {
    assert!(n >= 1);
    let nf = n as f64;
    let core = discriminant_core(p, n);
    if core < 0.0 {
        return Err(Error::NegativeDiscriminant(core, n));
    }
    let s = p.f0 + p.f_t;
    let root = core.sqrt();
    let minus = 4.0 * nf / (s + root);
    let plus = nf * (s + root) / (p.f0 * p.f_t * (1.0 - (-2.0 * nf * p.t).exp()));
    Ok((minus, plus))
}

/// All closed-form eigenvalues up to mode `n_max` as `(mode, tau)` pairs:
/// `tau = 0` and `tau_0^+` at mode 0, then `tau_n^-`, `tau_n^+` for
/// n = 1..n_max. The list is not sorted across modes.
pub fn drum_eigenvalues(p: DrumParams, n_max: usize) -> Result<Vec<(usize, f64)>> {
    assert!(n_max >= 1, "n_max must be at least 1");
    let mut out = vec![(0, 0.0), (0, tau0_plus(p))];
    for n in 1..=n_max {
        let (minus, plus) = tau_n_pair(p, n)?;
        out.push((n, minus));
        out.push((n, plus));
    }
    Ok(out)
}

/// First positive eigenvalue `min(tau_0^+, tau_1^-)`.
pub fn drum_tau1(p: DrumParams) -> f64 {
    let (minus, _) = tau_n_pair(p, 1).expect("discriminant is positive by construction");
    tau0_plus(p).min(minus)
}

/// Ratio `H(T) = tau_1^- / tau_0^+` for density ratio `alpha = f0/fT`,
/// increasing in T.
fn branch_ratio(alpha: f64, t: f64) -> f64 {
    let p = DrumParams::new(alpha, 1.0, t).expect("positive parameters");
    let (minus, _) = tau_n_pair(p, 1).expect("discriminant is positive");
    minus / tau0_plus(p)
}

/// The unique length `T(alpha)` where the mode-0 and mode-1 branches cross
/// (`H(T) = 1`); at this length the first eigenvalue has multiplicity 3.
pub fn crossing_t(alpha: f64) -> Result<f64> {
    assert!(alpha > 0.0, "alpha must be positive");
    let f = |t: f64| branch_ratio(alpha, t) - 1.0;
    // H is increasing with H -> 0 as T -> 0 and H -> infinity as T -> infinity
    let mut lo = 1.0;
    while f(lo) >= 0.0 {
        lo *= 0.5;
        if lo < 1e-12 {
            return Err(Error::NoConvergence(numerics::MAX_ITER));
        }
    }
    let bracket = expand_upward(f, lo, 2.0 * lo)?;
    find_root(f, bracket, 1e-13)
}

/// Maximises `F(a) = 1/t1(a) + 1/t2(a)` over the coarse grid
/// `a in [-5, 5]` (step 0.05) followed by golden-section refinement.
/// The maximum sits at `a = 0` with `F = 2/t1(0)`.
pub fn maximize_f() -> (f64, f64) {
    let f = |a: f64| drum_profile(a).f;
    let mut best_a = -5.0;
    let mut best = f(best_a);
    let mut a = -5.0;
    while a < 5.0 {
        a += 0.05;
        let v = f(a);
        if v > best {
            best = v;
            best_a = a;
        }
    }
    golden_section_max(f, best_a - 0.05, best_a + 0.05, 1e-9)
}

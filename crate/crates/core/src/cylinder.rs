//! Steklov transmission spectrum of a weighted circle configuration on the
//! infinite flat cylinder.
//!
//! A configuration is N parallel circles at heights z_1 < ... < z_N carrying
//! measure weights beta_i that sum to one. Separation in the rotation angle
//! reduces the eigenvalue problem to one generalized symmetric tridiagonal
//! eigenproblem per Fourier mode n: the stiffness matrix collects the
//! Dirichlet-to-Neumann contributions of the segments between consecutive
//! circles (solutions of h'' - n^2 h = 0) and of the two semi-infinite ends,
//! while the mass matrix is diag(beta). Mode 0 is rotationally invariant;
//! every mode n >= 1 carries angular multiplicity two.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tridiag::SymTridiag;

/// Hard cap on the Fourier-mode scan; reaching it means the configuration is
/// degenerate enough that the requested eigenvalue count is suspect.
pub const MODE_CAP: usize = 64;

/// Default relative tolerance for clustering eigenvalues when counting the
/// multiplicity of tau_1.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// N circles on the cylinder: N-1 positive spacings and N nonnegative
/// weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCircleConfig", into = "RawCircleConfig")]
pub struct CircleConfig {
    spacings: Vec<f64>,
    weights: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawCircleConfig {
    spacings: Vec<f64>,
    weights: Vec<f64>,
}

impl TryFrom<RawCircleConfig> for CircleConfig {
    type Error = Error;
    fn try_from(raw: RawCircleConfig) -> Result<Self> {
        CircleConfig::new(raw.spacings, raw.weights)
    }
}

impl From<CircleConfig> for RawCircleConfig {
    fn from(c: CircleConfig) -> Self {
        RawCircleConfig { spacings: c.spacings, weights: c.weights }
    }
}

impl CircleConfig {
    /// Validates the invariants: every spacing positive and finite, weights
    /// nonnegative and summing to one within 1e-12, lengths consistent.
    pub fn new(spacings: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidConfig("at least one circle is required".into()));
        }
        if spacings.len() + 1 != weights.len() {
            return Err(Error::InvalidConfig(format!(
                "{} spacings incompatible with {} weights",
                spacings.len(),
                weights.len()
            )));
        }
        for (i, &s) in spacings.iter().enumerate() {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::InvalidConfig(format!("spacing {i} is {s}, must be positive")));
            }
        }
        let mut sum = 0.0;
        for (i, &w) in weights.iter().enumerate() {
            if !(w >= 0.0) {
                return Err(Error::InvalidConfig(format!("weight {i} is {w}, must be >= 0")));
            }
            sum += w;
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidConfig(format!("weights sum to {sum}, expected 1")));
        }
        Ok(CircleConfig { spacings, weights })
    }

    /// Builds a configuration from unnormalized masses, rescaling them to
    /// sum to one.
    pub fn from_masses(spacings: Vec<f64>, masses: &[f64]) -> Result<Self> {
        let total: f64 = masses.iter().sum();
        if !(total > 0.0) {
            return Err(Error::AllZero);
        }
        let weights = masses.iter().map(|m| m / total).collect();
        CircleConfig::new(spacings, weights)
    }

    pub fn n_circles(&self) -> usize {
        self.weights.len()
    }

    pub fn spacings(&self) -> &[f64] {
        &self.spacings
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn has_zero_weight(&self) -> bool {
        self.weights.iter().any(|&w| w == 0.0)
    }
}

/// The mode-n eigenproblem `K_n h = tau B h` with `B = diag(beta)`.
#[derive(Debug, Clone)]
pub struct ModeProblem {
    pub mode: usize,
    pub stiffness: SymTridiag,
    pub mass: Vec<f64>,
}

impl ModeProblem {
    pub fn new(config: &CircleConfig, mode: usize) -> Self {
        ModeProblem {
            mode,
            stiffness: mode_stiffness(config, mode),
            mass: config.weights().to_vec(),
        }
    }
}

/// `coth(x)` for x > 0 in overflow-safe exponential form.
fn coth_safe(x: f64) -> f64 {
    let q = (-2.0 * x).exp();
    (1.0 + q) / (1.0 - q)
}

/// `1/sinh(x)` for x > 0 in overflow-safe exponential form.
fn csch_safe(x: f64) -> f64 {
    let q = (-2.0 * x).exp();
    2.0 * (-x).exp() / (1.0 - q)
}

/// Assembles the mode-n stiffness matrix.
///
/// Each interior segment of conformal length L contributes the two-point
/// Dirichlet-to-Neumann block of `h'' - n^2 h = 0`: diagonal
/// `n coth(nL)`, off-diagonal `-n / sinh(nL)` (for n = 0 the limits `1/L`
/// and `-1/L`). The two semi-infinite ends add `n` to the end diagonals
/// (the decaying extension `e^{-n|z|}`; constant extension for n = 0).
pub fn mode_stiffness(config: &CircleConfig, n: usize) -> SymTridiag {
    let nc = config.n_circles();
    let mut diag = vec![0.0; nc];
    let mut off = vec![0.0; nc.saturating_sub(1)];
    if n == 0 {
        for (i, &len) in config.spacings().iter().enumerate() {
            let k = 1.0 / len;
            diag[i] += k;
            diag[i + 1] += k;
            off[i] -= k;
        }
    } else {
        let nf = n as f64;
        for (i, &len) in config.spacings().iter().enumerate() {
            let x = nf * len;
            diag[i] += nf * coth_safe(x);
            diag[i + 1] += nf * coth_safe(x);
            off[i] -= nf * csch_safe(x);
        }
        diag[0] += nf;
        diag[nc - 1] += nf;
    }
    SymTridiag::new(diag, off)
}

/// All N generalized eigenvalues of `(K_n, diag(beta))`, ascending. The
/// problem is symmetrized with `B^{-1/2}` and handed to the tridiagonal
/// solver. Requires strictly positive weights.
pub fn mode_eigenvalues(problem: &ModeProblem) -> Result<Vec<f64>> {
    if let Some(index) = problem.mass.iter().position(|&w| w <= 0.0) {
        return Err(Error::SingularMass { index });
    }
    let inv_sqrt: Vec<f64> = problem.mass.iter().map(|w| 1.0 / w.sqrt()).collect();
    let k = &problem.stiffness;
    let n = k.n();
    let diag: Vec<f64> = (0..n).map(|i| k.diag[i] * inv_sqrt[i] * inv_sqrt[i]).collect();
    let off: Vec<f64> = (0..n.saturating_sub(1))
        .map(|i| k.off[i] * inv_sqrt[i] * inv_sqrt[i + 1])
        .collect();
    let scale = diag.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let mut ev = SymTridiag::new(diag, off).eigenvalues()?;
    // K_n is positive semidefinite, so negative values are pure roundoff.
    for v in ev.iter_mut() {
        if *v < 0.0 {
            debug_assert!(*v > -1e-10 * scale.max(1.0), "eigenvalue {v} below PSD tolerance");
            *v = 0.0;
        }
    }
    Ok(ev)
}

/// Removes every zero-weight circle, merging its two adjacent spacings (a
/// zero-density circle imposes no transmission jump). End circles simply
/// drop their single spacing.
pub fn reduce_zero_weights(config: &CircleConfig) -> Result<CircleConfig> {
    if !config.has_zero_weight() {
        return Ok(config.clone());
    }
    let mut weights = Vec::new();
    let mut spacings = Vec::new();
    // gap accumulates conformal length until the next retained circle
    let mut gap: Option<f64> = None;
    for (i, &w) in config.weights().iter().enumerate() {
        if w > 0.0 {
            if let Some(g) = gap.take() {
                if !weights.is_empty() {
                    spacings.push(g);
                }
            }
            weights.push(w);
            gap = Some(0.0);
        }
        if i < config.spacings().len() {
            if let Some(g) = gap.as_mut() {
                *g += config.spacings()[i];
            }
        }
    }
    if weights.is_empty() {
        return Err(Error::AllZero);
    }
    CircleConfig::new(spacings, weights)
}

/// One eigenvalue of the transmission spectrum, labeled by its Fourier mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub tau: f64,
    pub mode: usize,
    /// 1 for mode 0, 2 for modes n >= 1.
    pub angular_multiplicity: usize,
}

/// The assembled spectrum: entries sorted ascending, the first strictly
/// positive eigenvalue tau_1, its normalization tau1_bar = 2 pi tau_1 (the
/// total measure mass is 2 pi when the weights sum to one), and the
/// multiplicity of the tau_1 cluster counted with angular multiplicity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransmissionSpectrum {
    pub entries: Vec<SpectrumEntry>,
    pub tau1: f64,
    pub tau1_bar: f64,
    pub multiplicity: usize,
}

impl TransmissionSpectrum {
    /// Entries within `cluster_tol` (relative) of `tau1`, in order.
    pub fn tau1_cluster(&self, cluster_tol: f64) -> Vec<SpectrumEntry> {
        self.entries
            .iter()
            .filter(|e| e.tau > 0.0 && (e.tau - self.tau1).abs() <= cluster_tol * self.tau1)
            .copied()
            .collect()
    }

    /// Smallest eigenvalue strictly above the tau_1 cluster, if any was
    /// computed.
    pub fn gap_above_tau1(&self, cluster_tol: f64) -> Option<f64> {
        self.entries
            .iter()
            .map(|e| e.tau)
            .find(|&t| t > self.tau1 * (1.0 + cluster_tol))
            .map(|t| t - self.tau1)
    }
}

/// Unions the mode eigenvalue lists over n = 0, 1, 2, ... until the minimum
/// eigenvalue of the current mode exceeds the running k_max-th smallest
/// (counted with angular multiplicity). Mode monotonicity of the stiffness
/// forms makes the cutoff exact. Zero-weight circles must be removed first;
/// `SingularMass` propagates otherwise.
pub fn transmission_spectrum(
    config: &CircleConfig,
    k_max: usize,
    cluster_tol: f64,
) -> Result<TransmissionSpectrum> {
    assert!(k_max >= 1, "k_max must be at least 1");
    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut mode = 0;
    loop {
        if mode > MODE_CAP {
            return Err(Error::ModeScanCap { cap: MODE_CAP });
        }
        let problem = ModeProblem::new(config, mode);
        let mut ev = mode_eigenvalues(&problem)?;
        if mode == 0 {
            // the all-ones vector spans the kernel of K_0 exactly
            ev[0] = 0.0;
        }
        let min_ev = ev[0];
        let angular_multiplicity = if mode == 0 { 1 } else { 2 };
        for tau in ev {
            entries.push(SpectrumEntry { tau, mode, angular_multiplicity });
        }
        entries.sort_by(|a, b| a.tau.partial_cmp(&b.tau).expect("finite eigenvalues"));
        if mode >= 1 {
            if let Some(kth) = kth_smallest(&entries, k_max) {
                if min_ev > kth {
                    break;
                }
            }
        }
        mode += 1;
    }
    let tau1 = entries
        .iter()
        .map(|e| e.tau)
        .find(|&t| t > 0.0)
        .expect("a positive eigenvalue exists for a valid configuration");
    let multiplicity = entries
        .iter()
        .filter(|e| e.tau > 0.0 && (e.tau - tau1).abs() <= cluster_tol * tau1)
        .map(|e| e.angular_multiplicity)
        .sum();
    Ok(TransmissionSpectrum {
        entries,
        tau1,
        tau1_bar: 2.0 * std::f64::consts::PI * tau1,
        multiplicity,
    })
}

/// k-th smallest eigenvalue counted with angular multiplicity (1-based),
/// assuming `entries` is sorted.
fn kth_smallest(entries: &[SpectrumEntry], k: usize) -> Option<f64> {
    let mut count = 0;
    for e in entries {
        count += e.angular_multiplicity;
        if count >= k {
            return Some(e.tau);
        }
    }
    None
}

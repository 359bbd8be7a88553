//! Maximisation of the normalized first eigenvalue over configuration
//! space.
//!
//! The objective is nonsmooth exactly where it matters: maximisers sit on
//! eigenvalue crossings, so the search is derivative-free (Nelder-Mead with
//! restarts and multistart seeding). Positivity constraints are built into
//! the parametrization: spacings are exponentials of unconstrained reals
//! and weights are normalized exponentials, which keeps every candidate in
//! the open simplex.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catenoid::{derive_cylinder_data, find_symmetric_balanced};
use crate::cylinder::{
    transmission_spectrum, CircleConfig, SpectrumEntry, DEFAULT_CLUSTER_TOL,
};
use crate::error::Result;

/// Coordinates are clamped to this box before exponentiation; it spans 26
/// orders of magnitude, far beyond any non-degenerate maximiser.
const COORD_BOUND: f64 = 30.0;

/// Eigenvalues requested per spectrum evaluation during optimisation.
const K_MAX: usize = 6;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub config: CircleConfig,
    /// Normalized first eigenvalue at `config`, recomputed from the
    /// configuration after the search.
    pub value: f64,
    pub multiplicity: usize,
    /// `(objective evaluations so far, best value)` at every improvement.
    pub trace: Vec<(usize, f64)>,
    pub seeds_used: usize,
}

/// Cluster structure of the first positive eigenvalue.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub tau1: f64,
    pub tau1_bar: f64,
    pub cluster: Vec<SpectrumEntry>,
    pub multiplicity: usize,
    /// Distance from tau_1 to the next eigenvalue above the cluster.
    pub gap: Option<f64>,
    /// Multiplicity 3 realised as one mode-0 eigenvalue plus one mode-1
    /// pair: the signature of a critical configuration.
    pub critical_like: bool,
}

/// Reports the tau_1 cluster at the given relative tolerance.
pub fn criticality_report(config: &CircleConfig, cluster_tol: f64) -> Result<CriticalityReport> {
    let spectrum = transmission_spectrum(config, K_MAX, cluster_tol)?;
    let cluster = spectrum.tau1_cluster(cluster_tol);
    let mode0 = cluster.iter().filter(|e| e.mode == 0).count();
    let mode1 = cluster.iter().filter(|e| e.mode == 1).count();
    let critical_like = spectrum.multiplicity == 3 && mode0 == 1 && mode1 == 1;
    Ok(CriticalityReport {
        tau1: spectrum.tau1,
        tau1_bar: spectrum.tau1_bar,
        multiplicity: spectrum.multiplicity,
        gap: spectrum.gap_above_tau1(cluster_tol),
        cluster,
        critical_like,
    })
}

// ---------------------------------------------------------------------------
// parametrization

/// Search space: either the full product of log-spacings and weight
/// coordinates, or its reflection-symmetric slice.
#[derive(Debug, Clone, Copy)]
struct Chart {
    n: usize,
    symmetric: bool,
}

impl Chart {
    fn dim(&self) -> usize {
        let n = self.n;
        if self.symmetric {
            n / 2 + n.div_ceil(2) - 1
        } else {
            2 * (n - 1)
        }
    }

    fn spacing_dim(&self) -> usize {
        if self.symmetric {
            self.n / 2
        } else {
            self.n - 1
        }
    }

    fn decode(&self, x: &[f64]) -> CircleConfig {
        let n = self.n;
        debug_assert_eq!(x.len(), self.dim());
        let clamp = |v: f64| v.clamp(-COORD_BOUND, COORD_BOUND);
        let mut log_spacings = vec![0.0; n - 1];
        let mut wcoord = vec![0.0; n];
        if self.symmetric {
            let m = self.spacing_dim();
            for i in 0..n - 1 {
                log_spacings[i] = clamp(x[i.min(n - 2 - i).min(m - 1)]);
            }
            for i in 0..n {
                let j = i.min(n - 1 - i);
                wcoord[i] = if j == 0 { 0.0 } else { clamp(x[m + j - 1]) };
            }
        } else {
            for i in 0..n - 1 {
                log_spacings[i] = clamp(x[i]);
            }
            for i in 1..n {
                wcoord[i] = clamp(x[n - 1 + i - 1]);
            }
        }
        let spacings: Vec<f64> = log_spacings.iter().map(|&v| v.exp()).collect();
        let top = wcoord.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let raw: Vec<f64> = wcoord.iter().map(|&v| (v - top).exp()).collect();
        let sum: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|v| v / sum).collect();
        CircleConfig::new(spacings, weights).expect("decoded coordinates are always valid")
    }

    /// Coordinates whose decode reproduces `config` (up to the symmetric
    /// projection when the chart is symmetric).
    fn encode(&self, config: &CircleConfig) -> Vec<f64> {
        let n = self.n;
        let mut x = Vec::with_capacity(self.dim());
        if self.symmetric {
            for i in 0..self.spacing_dim() {
                x.push(config.spacings()[i].ln());
            }
            let w0 = config.weights()[0].ln();
            for i in 1..n.div_ceil(2) {
                x.push(config.weights()[i].ln() - w0);
            }
        } else {
            for &s in config.spacings() {
                x.push(s.ln());
            }
            let w0 = config.weights()[0].ln();
            for &w in &config.weights()[1..] {
                x.push(w.ln() - w0);
            }
        }
        x
    }
}

fn objective(config: &CircleConfig) -> f64 {
    transmission_spectrum(config, K_MAX, DEFAULT_CLUSTER_TOL)
        .map(|s| s.tau1_bar)
        .unwrap_or(0.0)
}

// ---------------------------------------------------------------------------
// Nelder-Mead

struct NmOutcome {
    x: Vec<f64>,
    value: f64,
    evals: usize,
}

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) maximising `f`, stopping when the simplex diameter falls
/// below `tol`.
fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> NmOutcome {
    let dim = x0.len();
    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        -f(x) // minimise the negated objective
    };
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut p = x0.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    let mut scores: Vec<f64> = simplex.iter().map(|p| eval(p, &mut evals)).collect();

    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("finite scores"));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        let diameter = simplex
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&simplex[best])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0f64, f64::max);
        if diameter < tol {
            break;
        }

        let mut centroid = vec![0.0; dim];
        for &i in &order[..dim] {
            for d in 0..dim {
                centroid[d] += simplex[i][d];
            }
        }
        for c in centroid.iter_mut() {
            *c /= dim as f64;
        }

        let lerp = |from: &[f64], towards: &[f64], t: f64| -> Vec<f64> {
            from.iter().zip(towards).map(|(a, b)| a + t * (b - a)).collect()
        };
        let reflected = lerp(&simplex[worst], &centroid, 2.0);
        let fr = eval(&reflected, &mut evals);
        if fr < scores[best] {
            let expanded = lerp(&simplex[worst], &centroid, 3.0);
            let fe = eval(&expanded, &mut evals);
            if fe < fr {
                simplex[worst] = expanded;
                scores[worst] = fe;
            } else {
                simplex[worst] = reflected;
                scores[worst] = fr;
            }
        } else if fr < scores[second_worst] {
            simplex[worst] = reflected;
            scores[worst] = fr;
        } else {
            let contracted = if fr < scores[worst] {
                lerp(&simplex[worst], &centroid, 1.5)
            } else {
                lerp(&simplex[worst], &centroid, 0.5)
            };
            let fc = eval(&contracted, &mut evals);
            if fc < scores[worst].min(fr) {
                simplex[worst] = contracted;
                scores[worst] = fc;
            } else {
                for &i in &order[1..] {
                    simplex[i] = lerp(&simplex[i], &simplex[best], 0.5);
                    scores[i] = eval(&simplex[i], &mut evals);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=dim {
        if scores[i] < scores[best] {
            best = i;
        }
    }
    NmOutcome { x: simplex[best].clone(), value: -scores[best], evals }
}

/// Nelder-Mead with two restarts of shrinking initial step around the
/// incumbent.
fn polish(chart: Chart, x0: &[f64], trace: &mut Vec<(usize, f64)>, evals: &mut usize) -> (Vec<f64>, f64) {
    let mut x = x0.to_vec();
    let mut best = f64::NEG_INFINITY;
    let mut step = 0.25;
    for _ in 0..3 {
        let mut f = |p: &[f64]| objective(&chart.decode(p));
        let out = nelder_mead(&mut f, &x, step, 1e-10, 400 * chart.dim().max(1));
        *evals += out.evals;
        if out.value > best {
            best = out.value;
            x = out.x;
            trace.push((*evals, best));
        }
        step *= 0.1;
    }
    (x, best)
}

fn assemble_result(
    config: CircleConfig,
    trace: Vec<(usize, f64)>,
    seeds_used: usize,
) -> Result<OptimizationResult> {
    let spectrum = transmission_spectrum(&config, K_MAX, DEFAULT_CLUSTER_TOL)?;
    debug_assert!(config.weights().iter().all(|&w| w > 0.0));
    Ok(OptimizationResult {
        config,
        value: spectrum.tau1_bar,
        multiplicity: spectrum.multiplicity,
        trace,
        seeds_used,
    })
}

/// Prefer higher value; break exact ties lexicographically on the
/// configuration so reruns are reproducible.
fn better(candidate: &(CircleConfig, f64), incumbent: &(CircleConfig, f64)) -> bool {
    if candidate.1 != incumbent.1 {
        return candidate.1 > incumbent.1;
    }
    let key = |c: &CircleConfig| (c.spacings().to_vec(), c.weights().to_vec());
    key(&candidate.0) < key(&incumbent.0)
}

/// Maximises the normalized first eigenvalue over the open weight simplex
/// for fixed spacings: multistart Nelder-Mead from the uniform weights plus
/// `seeds` random perturbations.
pub fn maximize_weights(spacings: &[f64], seeds: usize, rng_seed: u64) -> Result<OptimizationResult> {
    let n = spacings.len() + 1;
    let uniform = CircleConfig::new(spacings.to_vec(), vec![1.0 / n as f64; n])?;
    if n == 1 {
        return assemble_result(uniform, vec![], 1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let chart = WeightChart { spacings: spacings.to_vec() };
    let mut trace = Vec::new();
    let mut evals = 0;
    let dim = n - 1;
    let mut starts = vec![vec![0.0; dim]];
    for _ in 0..seeds {
        starts.push((0..dim).map(|_| rng.gen_range(-1.5..1.5)).collect());
    }
    let seeds_used = starts.len();
    let mut best: Option<(CircleConfig, f64)> = None;
    for x0 in starts {
        let mut x = x0;
        let mut step = 0.25;
        for _ in 0..3 {
            let mut f = |p: &[f64]| objective(&chart.decode(p));
            let out = nelder_mead(&mut f, &x, step, 1e-10, 400 * dim);
            evals += out.evals;
            x = out.x;
            let cand = (chart.decode(&x), out.value);
            if best.as_ref().map_or(true, |b| better(&cand, b)) {
                trace.push((evals, cand.1));
                best = Some(cand);
            }
            step *= 0.1;
        }
    }
    let (config, _) = best.expect("at least one start");
    assemble_result(config, trace, seeds_used)
}

/// Weight-only chart over fixed spacings.
struct WeightChart {
    spacings: Vec<f64>,
}

impl WeightChart {
    fn decode(&self, x: &[f64]) -> CircleConfig {
        let n = self.spacings.len() + 1;
        let mut wcoord = vec![0.0; n];
        for i in 1..n {
            wcoord[i] = x[i - 1].clamp(-COORD_BOUND, COORD_BOUND);
        }
        let top = wcoord.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let raw: Vec<f64> = wcoord.iter().map(|&v| (v - top).exp()).collect();
        let sum: f64 = raw.iter().sum();
        CircleConfig::new(self.spacings.clone(), raw.iter().map(|v| v / sum).collect())
            .expect("decoded weights are always valid")
    }
}

/// Joint maximisation over spacings and weights for N circles.
///
/// One mandatory seed is the geometry-derived candidate (the balanced
/// configuration of order N mapped to cylinder data); a uniform seed and
/// `seeds` random log-normal perturbations complete the multistart. With
/// `symmetric` the search runs in the reflection-symmetric slice first and
/// a full-space pass verifies the result.
pub fn maximize_full(n: usize, seeds: usize, symmetric: bool, rng_seed: u64) -> Result<OptimizationResult> {
    assert!(n >= 1);
    let geometry = derive_cylinder_data(&find_symmetric_balanced(n)?)?.config;
    if n == 1 {
        return assemble_result(geometry, vec![], 1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let chart = Chart { n, symmetric };
    let geo_x = chart.encode(&geometry);
    let mut starts = vec![geo_x.clone(), vec![0.0; chart.dim()]];
    for _ in 0..seeds {
        let jitter: Vec<f64> =
            geo_x.iter().map(|&v| v + rng.gen_range(-0.7..0.7)).collect();
        starts.push(jitter);
    }
    let seeds_used = starts.len();

    let mut trace = Vec::new();
    let mut evals = 0;
    let mut best: Option<(CircleConfig, f64)> = None;
    for x0 in starts {
        let (x, value) = polish(chart, &x0, &mut trace, &mut evals);
        let cand = (chart.decode(&x), value);
        if best.as_ref().map_or(true, |b| better(&cand, b)) {
            best = Some(cand);
        }
    }

    if symmetric {
        // verification pass in the full space, seeded at the symmetric best
        let full = Chart { n, symmetric: false };
        let x0 = full.encode(&best.as_ref().expect("nonempty").0);
        let (x, value) = polish(full, &x0, &mut trace, &mut evals);
        let cand = (full.decode(&x), value);
        if best.as_ref().map_or(true, |b| better(&cand, b)) {
            best = Some(cand);
        }
    }

    let (config, _) = best.expect("at least one start");
    assemble_result(config, trace, seeds_used)
}

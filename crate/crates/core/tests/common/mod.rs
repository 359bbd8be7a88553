//! Independent finite-difference oracle for the transmission spectrum.
//!
//! The cylinder is truncated to a long interval with natural boundary
//! conditions and discretized per Fourier mode with linear elements and a
//! lumped mass for the n^2 term. Point masses sit at the circle nodes, so
//! the generalized eigenproblem condenses exactly onto those nodes via a
//! Schur complement of the path-graph stiffness matrix. Nothing here uses
//! the analytic hyperbolic Dirichlet-to-Neumann blocks.

use steklov::cylinder::CircleConfig;
use steklov::tridiag::SymTridiag;

/// Solves a symmetric positive-definite tridiagonal system in place
/// (Thomas algorithm).
fn solve_tridiag(diag: &[f64], off: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = off.first().copied().unwrap_or(0.0) / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - off[i - 1] * c[i - 1];
        if i < n - 1 {
            c[i] = off[i] / m;
        }
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / m;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= c[i] * next;
    }
    x
}

fn unit(len: usize, index: usize) -> Vec<f64> {
    let mut e = vec![0.0; len];
    e[index] = 1.0;
    e
}

/// One maximal run of grid nodes strictly between circle nodes (or beyond
/// the outermost circles). `intervals` intervals of width `h` each; the
/// interval stiffness is `1/h` and the lumped `n^2` mass adds `n^2 h / 2`
/// per interval endpoint.
struct Run {
    h: f64,
    intervals: usize,
    /// Circle indices coupled at the left/right ends (None at the outer
    /// boundary of the truncated cylinder).
    left: Option<usize>,
    right: Option<usize>,
}

impl Run {
    /// Condensed contribution of this run: the circle nodes keep the direct
    /// terms of their adjacent intervals, and everything in between is
    /// eliminated through the Schur complement (coupling `-1/h` into the
    /// ends of the eliminated block).
    fn condense(&self, n2: f64, k_eff: &mut SymTridiag) {
        let w = 1.0 / self.h + n2 * self.h / 2.0;
        if let Some(i) = self.left {
            k_eff.diag[i] += w;
        }
        if let Some(i) = self.right {
            k_eff.diag[i] += w;
        }
        let (diag, off) = self.interior_block(n2);
        let p = diag.len();
        if p == 0 {
            // single interval between two circles: direct coupling
            if let (Some(l), Some(r)) = (self.left, self.right) {
                k_eff.off[l.min(r)] += -1.0 / self.h;
            }
            return;
        }
        let k = -1.0 / self.h;
        let first = solve_tridiag(&diag, &off, &unit(p, 0));
        let last = solve_tridiag(&diag, &off, &unit(p, p - 1));
        match (self.left, self.right) {
            (Some(l), Some(r)) => {
                k_eff.diag[l] -= k * k * first[0];
                k_eff.diag[r] -= k * k * last[p - 1];
                k_eff.off[l.min(r)] -= k * k * first[p - 1];
            }
            (Some(l), None) => k_eff.diag[l] -= k * k * first[0],
            (None, Some(r)) => k_eff.diag[r] -= k * k * last[p - 1],
            (None, None) => unreachable!("runs touch at least one circle"),
        }
    }

    /// Tridiagonal block of the eliminated nodes. Runs that end at the
    /// truncated boundary include the boundary node (natural condition:
    /// its diagonal only sees one interval).
    fn interior_block(&self, n2: f64) -> (Vec<f64>, Vec<f64>) {
        let between = self.intervals - 1;
        let boundary_nodes =
            usize::from(self.left.is_none()) + usize::from(self.right.is_none());
        let p = between + boundary_nodes;
        let mut diag = vec![2.0 / self.h + n2 * self.h; p];
        let off = vec![-1.0 / self.h; p.saturating_sub(1)];
        if p == 0 {
            return (diag, off);
        }
        if self.left.is_none() {
            diag[0] = 1.0 / self.h + n2 * self.h / 2.0;
        }
        if self.right.is_none() {
            diag[p - 1] = 1.0 / self.h + n2 * self.h / 2.0;
        }
        (diag, off)
    }
}

/// Condensed mode-n stiffness on the circle nodes.
fn fd_mode_stiffness(config: &CircleConfig, n: usize, nodes: usize) -> SymTridiag {
    let nc = config.n_circles();
    let spacings = config.spacings();
    let max_spacing = spacings.iter().cloned().fold(0.0f64, f64::max);
    let stub = (10.0 * max_spacing).max(12.0);
    let total: f64 = spacings.iter().sum::<f64>() + 2.0 * stub;
    let target_h = total / nodes as f64;

    let mut k_eff = SymTridiag::new(vec![0.0; nc], vec![0.0; nc.saturating_sub(1)]);
    let n2 = (n * n) as f64;

    let mut runs: Vec<Run> = Vec::with_capacity(nc + 1);
    runs.push(Run { h: 0.0, intervals: 0, left: None, right: Some(0) });
    runs[0].intervals = ((stub / target_h).ceil() as usize).max(4);
    runs[0].h = stub / runs[0].intervals as f64;
    for (i, &len) in spacings.iter().enumerate() {
        let intervals = ((len / target_h).ceil() as usize).max(4);
        runs.push(Run { h: len / intervals as f64, intervals, left: Some(i), right: Some(i + 1) });
    }
    {
        let intervals = ((stub / target_h).ceil() as usize).max(4);
        runs.push(Run { h: stub / intervals as f64, intervals, left: Some(nc - 1), right: None });
    }
    for run in &runs {
        run.condense(n2, &mut k_eff);
    }
    k_eff
}

/// First positive transmission eigenvalue of the truncated discretized
/// cylinder, scanning Fourier modes until their smallest eigenvalue can no
/// longer undercut the incumbent.
pub fn fd_tau1(config: &CircleConfig, nodes: usize) -> f64 {
    let weights = config.weights();
    let inv_sqrt: Vec<f64> = weights.iter().map(|w| 1.0 / w.sqrt()).collect();
    let mut best = f64::INFINITY;
    for n in 0..=16usize {
        let k = fd_mode_stiffness(config, n, nodes);
        let nc = k.n();
        let diag: Vec<f64> = (0..nc).map(|i| k.diag[i] * inv_sqrt[i] * inv_sqrt[i]).collect();
        let off: Vec<f64> = (0..nc.saturating_sub(1))
            .map(|i| k.off[i] * inv_sqrt[i] * inv_sqrt[i + 1])
            .collect();
        let ev = SymTridiag::new(diag, off).eigenvalues().expect("small eigenproblem");
        let floor = 1e-9 * ev.last().copied().unwrap_or(1.0).abs().max(1.0);
        let min_positive = ev.iter().copied().find(|&v| v > floor);
        if let Some(v) = min_positive {
            best = best.min(v);
        }
        // modes only stiffen from here on
        if ev[0] > best {
            break;
        }
    }
    best
}

/// Deterministic random configuration generator shared by the
/// oracle-backed tests.
pub fn random_config(rng: &mut impl rand::Rng, max_circles: usize) -> CircleConfig {
    let n = rng.gen_range(1..=max_circles);
    let spacings: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0f64).exp()).collect();
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0f64).exp()).collect();
    let sum: f64 = raw.iter().sum();
    CircleConfig::new(spacings, raw.iter().map(|v| v / sum).collect())
        .expect("generated configuration is valid")
}

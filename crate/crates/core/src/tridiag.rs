//! Symmetric tridiagonal matrices and their eigenvalues.
//!
//! The QL iteration below is the classic implicit-shift algorithm (ALGOL
//! procedure tql1, Bowdler-Martin-Reinsch-Wilkinson, Num. Math. 11, 1968),
//! eigenvalues only. Matrices here never exceed a few dozen rows.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix: `diag` has length n, `off` length n-1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1), "off-diagonal length mismatch");
        SymTridiag { diag, off }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Quadratic form `h^T A h`.
    pub fn quadratic_form(&self, h: &[f64]) -> f64 {
        let mut q = 0.0;
        for i in 0..self.n() {
            q += self.diag[i] * h[i] * h[i];
            if i + 1 < self.n() {
                q += 2.0 * self.off[i] * h[i] * h[i + 1];
            }
        }
        q
    }

    /// Matrix-vector product `A h`.
    pub fn mul_vec(&self, h: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y = vec![0.0; n];
        for i in 0..n {
            y[i] = self.diag[i] * h[i];
            if i > 0 {
                y[i] += self.off[i - 1] * h[i - 1];
            }
            if i + 1 < n {
                y[i] += self.off[i] * h[i + 1];
            }
        }
        y
    }

    /// All eigenvalues, sorted ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.n();
        if n == 0 {
            return Ok(vec![]);
        }
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        ql_implicit(&mut d, &mut e)?;
        d.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        Ok(d)
    }
}

/// In-place implicit-shift QL sweep on diagonal `d` and subdiagonal `e`
/// (`e[n-1]` is scratch). On return `d` holds the unsorted eigenvalues.
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenNoConvergence(l));
            }
            // Wilkinson shift from the leading 2x2
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

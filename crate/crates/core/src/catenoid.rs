//! Balanced catenoid configurations in the unit ball.
//!
//! The generating picture lives in the (t, r) half-plane: catenaries
//! `r(t) = a cosh((t - b)/a)` cut the unit circle in two points, and a
//! balanced configuration stacks catenoid bands between consecutive
//! latitudes so that adjacent pieces meet each circle at equal contact
//! angles, closed off by two flat caps. The angle bookkeeping (latitude
//! `beta`, contact angle `alpha`) turns the construction into a
//! one-parameter shooting problem in the starting latitude: propagate the
//! pair along the stack and bisect until the mid-stack symmetry condition
//! holds.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::cylinder::CircleConfig;
use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket};

/// Reported as tangency when the minimum of the circle-distance function is
/// this close to zero.
const TANGENT_TOL: f64 = 1e-13;

/// Tolerance for recognising the closing condition `alpha + beta = pi`.
const CLOSURE_TOL: f64 = 1e-9;

/// Iteration cap for the angle-propagation sequence.
const SEQUENCE_CAP: usize = 10_000;

/// Generating curve `r(t) = a cosh((t - b)/a)` of a catenoid, `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Catenary {
    pub a: f64,
    pub b: f64,
}

impl Catenary {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::DomainError(format!("catenary needs a > 0, got a = {a}, b = {b}")));
        }
        Ok(Catenary { a, b })
    }

    /// Conformal arc coordinate `s = (t - b)/a`.
    pub fn arc(&self, t: f64) -> f64 {
        (t - self.b) / self.a
    }

    pub fn radius(&self, t: f64) -> f64 {
        self.a * self.arc(t).cosh()
    }

    pub fn slope(&self, t: f64) -> f64 {
        self.arc(t).sinh()
    }

    /// Signed squared distance to the unit circle along the curve:
    /// `g(t) = t^2 + r(t)^2 - 1`.
    pub fn circle_gap(&self, t: f64) -> f64 {
        let r = self.radius(t);
        t * t + r * r - 1.0
    }

    fn circle_gap_slope(&self, t: f64) -> f64 {
        2.0 * t + self.a * (2.0 * self.arc(t)).sinh()
    }
}

/// Latitude / contact-angle pair at a circle intersection. Both angles lie
/// in (0, pi); a catenary with this right-hand data exists iff
/// `beta + alpha < pi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnglePair {
    pub beta: f64,
    pub alpha: f64,
}

impl AnglePair {
    pub fn new(beta: f64, alpha: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < PI && alpha > 0.0 && alpha < PI) {
            return Err(Error::DomainError(format!(
                "angles must lie in (0, pi): beta = {beta}, alpha = {alpha}"
            )));
        }
        Ok(AnglePair { beta, alpha })
    }

    /// Whether the pair is inside the existence range of Lemma-type
    /// catenary data (`beta + alpha < pi`).
    pub fn spawns_catenary(&self) -> bool {
        self.beta + self.alpha < PI
    }
}

/// The two intersection parameters `(t2, t1)` of the catenary with the unit
/// circle, `t2 < t1`, or `None` when the curve misses the open disk.
/// Degenerate touching is reported as [`Error::Tangent`].
///
/// `g` is strictly convex, so the minimiser is located first (bisection on
/// the increasing derivative) and each side is then bracketed separately.
pub fn circle_intersections(c: &Catenary) -> Result<Option<(f64, f64)>> {
    // roots are confined to (-1, 1): g(t) > t^2 - 1 >= 0 outside
    let gp = |t: f64| c.circle_gap_slope(t);
    let g = |t: f64| c.circle_gap(t);
    let t_min = if gp(-1.0) >= 0.0 {
        -1.0
    } else if gp(1.0) <= 0.0 {
        1.0
    } else {
        let bracket = Bracket::try_from_fn(gp, -1.0, 1.0)?;
        find_root(gp, bracket, 1e-14)?
    };
    let g_min = g(t_min);
    if g_min.abs() < TANGENT_TOL {
        return Err(Error::Tangent);
    }
    if g_min > 0.0 {
        return Ok(None);
    }
    let right = find_root(g, Bracket::new(t_min, 1.0, g_min, g(1.0))?, 1e-14)?;
    let left = find_root(g, Bracket::new(-1.0, t_min, g(-1.0), g_min)?, 1e-14)?;
    // one Newton step brings the residual |g| down to rounding level even
    // when the curve crosses the circle steeply (small a)
    let polish = |t: f64| t - g(t) / gp(t);
    Ok(Some((polish(left), polish(right))))
}

/// Latitudes and contact angles at the two intersection points, right
/// (larger t, smaller latitude) first.
///
/// The latitude is `atan2(r, t)`; the contact angle is measured between the
/// inward tangent of the curve and the circle tangent at the point, i.e.
/// `cos alpha = (sin beta - r' cos beta) / sqrt(1 + r'^2)` at both ends.
pub fn measure_angles(c: &Catenary) -> Result<(AnglePair, AnglePair)> {
    let (t2, t1) = circle_intersections(c)?.ok_or(Error::NoIntersection)?;
    let pair_at = |t: f64| -> Result<AnglePair> {
        let r = c.radius(t);
        let rp = c.slope(t);
        let beta = r.atan2(t);
        let cos_alpha = (beta.sin() - rp * beta.cos()) / rp.hypot(1.0);
        AnglePair::new(beta, cos_alpha.clamp(-1.0, 1.0).acos())
    };
    Ok((pair_at(t1)?, pair_at(t2)?))
}

/// The unique catenary whose right intersection realises the pair:
/// with `psi = beta + alpha - pi/2`,
/// `a = sin(beta) sin(beta + alpha)`, `s1 = asinh(tan psi)`,
/// `b = cos(beta) - a s1`.
pub fn catenary_from_angles(p: &AnglePair) -> Result<Catenary> {
    if !p.spawns_catenary() {
        return Err(Error::DomainError(format!(
            "no catenary for beta + alpha = {} >= pi",
            p.beta + p.alpha
        )));
    }
    let psi = p.beta + p.alpha - FRAC_PI_2;
    let s1 = psi.tan().asinh();
    let a = p.beta.sin() * (p.beta + p.alpha).sin();
    let b = p.beta.cos() - a * s1;
    Catenary::new(a, b)
}

/// One step of the angle propagation: the left-hand pair of the catenary
/// spawned by `p`.
pub fn advance(p: &AnglePair) -> Result<AnglePair> {
    let c = catenary_from_angles(p)?;
    let (_, left) = measure_angles(&c)?;
    Ok(left)
}

/// How an angle-propagation run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceStatus {
    /// `alpha_i + beta_i = pi` within tolerance at the final pair: a
    /// vertical cap closes a balanced configuration of that order.
    Closed { order: usize },
    /// `alpha_i + beta_i > pi` strictly at pair `index`; no configuration
    /// of this order exists for the starting latitude.
    Overshoot { index: usize },
}

/// Iterates [`advance`] from the cap pair `(beta, beta)` until the angle
/// sum reaches pi. All produced pairs are returned, including the final
/// one that triggered the stop.
pub fn build_sequence(beta_init: f64) -> Result<(Vec<AnglePair>, SequenceStatus)> {
    assert!(
        beta_init > 0.0 && beta_init < FRAC_PI_2,
        "starting latitude must lie in (0, pi/2)"
    );
    let mut pairs = vec![AnglePair::new(beta_init, beta_init)?];
    for i in 1..=SEQUENCE_CAP {
        let last = pairs.last().expect("sequence is nonempty");
        let sum = last.beta + last.alpha;
        if (sum - PI).abs() <= CLOSURE_TOL {
            return Ok((pairs, SequenceStatus::Closed { order: i }));
        }
        if sum > PI {
            return Ok((pairs, SequenceStatus::Overshoot { index: i }));
        }
        pairs.push(advance(last)?);
    }
    Err(Error::IterationCap(SEQUENCE_CAP))
}

/// A catenoid band between two circles: the catenary and the parameter
/// ranges of its intersection points (axial `t`, conformal arc `s`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatenoidPiece {
    pub catenary: Catenary,
    pub t_range: (f64, f64),
    pub s_range: (f64, f64),
}

/// A balanced configuration of order N: strictly increasing latitudes,
/// matching contact angles at every circle, N - 1 catenoid bands and two
/// flat caps stored by their latitudes alone (vertical segments carry no
/// catenary data).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalancedConfiguration {
    pub latitudes: Vec<f64>,
    pub contact_angles: Vec<f64>,
    pub pieces: Vec<CatenoidPiece>,
    pub cap_latitudes: (f64, f64),
}

impl BalancedConfiguration {
    pub fn order(&self) -> usize {
        self.latitudes.len()
    }
}

/// Residual of the mid-stack symmetry condition for a configuration of
/// order `n` started at `beta`; `None` when the propagation dies before
/// the middle of the stack is reached.
fn symmetry_residual(beta: f64, n: usize) -> Option<f64> {
    let k = n / 2;
    let mut pairs = Vec::with_capacity(k + 1);
    pairs.push(AnglePair { beta, alpha: beta });
    for _ in 0..k {
        let last = pairs.last().expect("nonempty");
        if last.beta + last.alpha >= PI {
            return None;
        }
        match advance(last) {
            Ok(next) => pairs.push(next),
            Err(_) => return None,
        }
    }
    if n % 2 == 1 {
        // odd order 2k+1: the middle circle sits on the equator
        Some(pairs[k].beta - FRAC_PI_2)
    } else {
        // even order 2k: the middle two latitudes are mirror images
        Some(pairs[k - 1].beta + pairs[k].beta - PI)
    }
}

/// Assembles the full configuration from a solved starting latitude.
fn assemble(beta_init: f64, n: usize) -> Result<BalancedConfiguration> {
    let mut pairs = vec![AnglePair::new(beta_init, beta_init)?];
    let mut pieces = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let last = *pairs.last().expect("nonempty");
        let c = catenary_from_angles(&last)?;
        let (t2, t1) = circle_intersections(&c)?.ok_or(Error::NoIntersection)?;
        pieces.push(CatenoidPiece {
            catenary: c,
            t_range: (t2, t1),
            s_range: (c.arc(t2), c.arc(t1)),
        });
        let (_, left) = measure_angles(&c)?;
        pairs.push(left);
    }
    let last = pairs.last().expect("nonempty");
    if (last.beta + last.alpha - PI).abs() > 1e-7 {
        return Err(Error::BracketNotFound { order: n });
    }
    let latitudes: Vec<f64> = pairs.iter().map(|p| p.beta).collect();
    for w in latitudes.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::DomainError(format!(
                "latitudes not strictly increasing: {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(BalancedConfiguration {
        contact_angles: pairs.iter().map(|p| p.alpha).collect(),
        cap_latitudes: (latitudes[0], latitudes[n - 1]),
        latitudes,
        pieces,
    })
}

/// The unique symmetric balanced configuration of order N, found by
/// bisection on the starting latitude against the mid-stack symmetry
/// residual. A uniform pre-scan (2000 samples) brackets the root across
/// the steps of the sequence-length function; the residual is strictly
/// increasing where defined.
pub fn find_symmetric_balanced(n: usize) -> Result<BalancedConfiguration> {
    assert!(n >= 1, "order must be at least 1");
    if n == 1 {
        // degenerate double disk: one equatorial circle, no catenoid bands
        return Ok(BalancedConfiguration {
            latitudes: vec![FRAC_PI_2],
            contact_angles: vec![FRAC_PI_2],
            pieces: vec![],
            cap_latitudes: (FRAC_PI_2, FRAC_PI_2),
        });
    }
    const SCAN: usize = 2000;
    let lo_edge = 1e-4;
    let hi_edge = FRAC_PI_2 - 1e-4;
    let at = |i: usize| lo_edge + (hi_edge - lo_edge) * i as f64 / (SCAN - 1) as f64;
    let mut bracket: Option<(f64, f64)> = None;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..SCAN {
        let beta = at(i);
        let res = symmetry_residual(beta, n);
        if let Some((pb, pr)) = prev {
            if pr < 0.0 && res.map_or(true, |r| r >= 0.0) {
                bracket = Some((pb, beta));
                break;
            }
        }
        prev = res.map(|r| (beta, r));
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::BracketNotFound { order: n })?;
    // defined-negative goes right; positive or dead goes left
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        match symmetry_residual(mid, n) {
            Some(r) if r < 0.0 => lo = mid,
            _ => hi = mid,
        }
    }
    assemble(0.5 * (lo + hi), n)
}

/// Area of the configuration: two flat caps `pi sin^2(beta)` plus the
/// closed-form band areas `pi a^2 [s + sinh(s) cosh(s)]` between the arc
/// parameters of each piece.
pub fn configuration_area(cfg: &BalancedConfiguration) -> f64 {
    let cap = |beta: f64| PI * beta.sin() * beta.sin();
    let band = |s: f64| s + s.sinh() * s.cosh();
    let mut area = cap(cfg.cap_latitudes.0) + cap(cfg.cap_latitudes.1);
    for p in &cfg.pieces {
        let a = p.catenary.a;
        area += PI * a * a * (band(p.s_range.1) - band(p.s_range.0));
    }
    area
}

/// Cylinder data derived from a balanced configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedCylinder {
    pub config: CircleConfig,
    /// Unnormalized measure masses per circle, `4 pi sin(alpha) sin(beta)`.
    pub masses: Vec<f64>,
    pub total_mass: f64,
}

/// Maps a balanced configuration to its cylinder picture: each band's
/// conformal spacing is its arc extent (the induced metric of a catenoid is
/// `a^2 cosh^2(s) (ds^2 + dtheta^2)`), and the measure mass at a circle is
/// `4 pi sin(alpha) sin(beta)`: boundary flux `2 sin(alpha)` times circle
/// length `2 pi sin(beta)`. Weights are the masses normalized to sum one;
/// the total mass equals twice the configuration area.
pub fn derive_cylinder_data(cfg: &BalancedConfiguration) -> Result<DerivedCylinder> {
    let spacings: Vec<f64> = cfg.pieces.iter().map(|p| p.s_range.1 - p.s_range.0).collect();
    let masses: Vec<f64> = cfg
        .latitudes
        .iter()
        .zip(&cfg.contact_angles)
        .map(|(&beta, &alpha)| 4.0 * PI * alpha.sin() * beta.sin())
        .collect();
    let total_mass = masses.iter().sum();
    let config = CircleConfig::from_masses(spacings, &masses)?;
    Ok(DerivedCylinder { config, masses, total_mass })
}

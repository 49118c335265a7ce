//! Closed-form and boundary-supremum evaluation of the hyperbolic-type
//! metrics.
//!
//! Every metric short-circuits to `0` when `x == y`, after both points have
//! been checked for membership.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use libm::{asinh, log, log1p, sqrt};

use crate::cross_ratio::cross_ratio;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::point::{vector, ExtendedPoint};
use crate::sup::{boundary_sup_with, maximize_periodic, CircleFrame, SupConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricId {
    /// Gromov hyperbolization metric `u_D`.
    U,
    /// Hyperbolic metric of the ball or half-space.
    Rho,
    /// Gehring-Osgood distance ratio metric.
    JTilde,
    /// Vuorinen distance ratio metric.
    J,
    /// Seittenranta metric.
    Delta,
    /// Apollonian metric.
    Alpha,
    /// Half-Apollonian metric.
    Eta,
    /// Cassinian metric.
    Cassinian,
    /// Triangular ratio metric.
    Triangular,
}

impl MetricId {
    pub const ALL: [MetricId; 9] = [
        MetricId::U,
        MetricId::Rho,
        MetricId::JTilde,
        MetricId::J,
        MetricId::Delta,
        MetricId::Alpha,
        MetricId::Eta,
        MetricId::Cassinian,
        MetricId::Triangular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricId::U => "u",
            MetricId::Rho => "rho",
            MetricId::JTilde => "j_tilde",
            MetricId::J => "j",
            MetricId::Delta => "delta",
            MetricId::Alpha => "alpha",
            MetricId::Eta => "eta",
            MetricId::Cassinian => "c",
            MetricId::Triangular => "s",
        }
    }

    /// Whether the metric is defined on `domain` at all.
    pub fn is_evaluable(self, domain: &Domain) -> bool {
        match self {
            MetricId::Rho => !matches!(domain, Domain::FiniteComplement(_)),
            MetricId::Delta => domain.extended_boundary_len().is_none_or(|n| n >= 2),
            _ => true,
        }
    }

    /// Whether the metric needs a numeric boundary supremum on `domain`.
    pub fn uses_boundary_sup(self) -> bool {
        matches!(
            self,
            MetricId::Alpha | MetricId::Eta | MetricId::Cassinian | MetricId::Triangular
        )
    }

    pub fn evaluate(self, domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
        self.evaluate_with(&SupConfig::default(), domain, x, y)
    }

    pub fn evaluate_with(
        self,
        config: &SupConfig,
        domain: &Domain,
        x: &ExtendedPoint,
        y: &ExtendedPoint,
    ) -> Result<f64> {
        match self {
            MetricId::U => u_metric(domain, x, y),
            MetricId::Rho => rho(domain, x, y),
            MetricId::JTilde => j_tilde(domain, x, y),
            MetricId::J => j_metric(domain, x, y),
            MetricId::Delta => delta_metric(domain, x, y),
            MetricId::Alpha => alpha_with(config, domain, x, y),
            MetricId::Eta => eta_with(config, domain, x, y),
            MetricId::Cassinian => cassinian_with(config, domain, x, y),
            MetricId::Triangular => triangular_with(config, domain, x, y),
        }
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or(Error::InvalidParameter("unknown metric name"))
    }
}

struct Pair<'a> {
    x: &'a [f64],
    y: &'a [f64],
    dist: f64,
}

impl Pair<'_> {
    fn coincident(&self) -> bool {
        self.x == self.y
    }
}

fn pair<'a>(domain: &Domain, x: &'a ExtendedPoint, y: &'a ExtendedPoint) -> Result<Pair<'a>> {
    let x = domain.member(x)?;
    let y = domain.member(y)?;
    Ok(Pair {
        x,
        y,
        dist: vector::dist(x, y),
    })
}

/// `u_D(x,y) = 2 log[(|x-y| + max{d(x),d(y)}) / sqrt(d(x) d(y))]`.
pub fn u_metric(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    let dx = domain.boundary_distance(p.x);
    let dy = domain.boundary_distance(p.y);
    let (big, small) = if dx >= dy { (dx, dy) } else { (dy, dx) };
    let geo = sqrt(big * small);
    // (|x-y| + M) / sqrt(Mm) - 1, written without cancellation
    let excess = (p.dist + big * (big - small) / (big + geo)) / geo;
    Ok(2.0 * log1p(excess))
}

/// Hyperbolic metric of the unit ball or the upper half-space.
pub fn rho(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    if matches!(domain, Domain::FiniteComplement(_)) {
        return Err(Error::UnsupportedDomain(
            "the hyperbolic metric needs the unit ball or the upper half-space",
        ));
    }
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    Ok(rho_unchecked(domain, p.x, p.y, p.dist))
}

fn rho_unchecked(domain: &Domain, x: &[f64], y: &[f64], dist: f64) -> f64 {
    match domain {
        Domain::UnitBall { .. } => {
            let denom = sqrt(vector::one_minus_norm_sq(x) * vector::one_minus_norm_sq(y));
            2.0 * asinh(dist / denom)
        }
        Domain::UpperHalfSpace { dim } => {
            let h = sqrt(x[dim - 1] * y[dim - 1]);
            2.0 * asinh(dist / (2.0 * h))
        }
        Domain::FiniteComplement(_) => unreachable!("checked by caller"),
    }
}

/// Hyperbolic distance between the axial points `r e_1, s e_1` of the ball,
/// or `r e_n, s e_n` of the half-space.
pub fn rho_axial(domain: &Domain, r: f64, s: f64) -> Result<f64> {
    if !(r.is_finite() && s.is_finite()) || r > s {
        return Err(Error::InvalidParameter("axial parameters need r <= s"));
    }
    match domain {
        Domain::UnitBall { .. } => {
            if r <= -1.0 || s >= 1.0 {
                return Err(Error::InvalidParameter("axial parameters must lie in (-1, 1)"));
            }
            if r == s {
                return Ok(0.0);
            }
            if s <= 0.0 {
                return Err(Error::InvalidParameter("axial parameters need s > 0"));
            }
            Ok(log1p(s) - log1p(-s) + log1p(-r) - log1p(r))
        }
        Domain::UpperHalfSpace { .. } => {
            if r <= 0.0 {
                return Err(Error::InvalidParameter("axial heights must be positive"));
            }
            Ok(log(s / r))
        }
        Domain::FiniteComplement(_) => Err(Error::UnsupportedDomain(
            "axial formula needs the unit ball or the upper half-space",
        )),
    }
}

/// `j̃_D(x,y) = ½ log[(1 + |x-y|/d(x)) (1 + |x-y|/d(y))]`.
pub fn j_tilde(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    let dx = domain.boundary_distance(p.x);
    let dy = domain.boundary_distance(p.y);
    Ok(0.5 * (log1p(p.dist / dx) + log1p(p.dist / dy)))
}

/// `j_D(x,y) = log(1 + |x-y| / min{d(x),d(y)})`.
pub fn j_metric(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    let m = domain
        .boundary_distance(p.x)
        .min(domain.boundary_distance(p.y));
    Ok(log1p(p.dist / m))
}

fn require_boundary(domain: &Domain, required: usize) -> Result<()> {
    match domain.extended_boundary_len() {
        Some(found) if found < required => Err(Error::BoundaryTooSmall { required, found }),
        _ => Ok(()),
    }
}

/// Seittenranta metric `log(1 + sup_{p,q ∈ ∂D} |p,x,q,y|)`.
///
/// On the ball and half-space this is the hyperbolic metric. On a finite
/// complement the supremum is an exact maximum over ordered boundary pairs,
/// `∞` included when it is a boundary point.
pub fn delta_metric(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    require_boundary(domain, 2)?;
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    match domain {
        Domain::FiniteComplement(fc) => {
            let removed = fc.removed();
            let to_x: Vec<f64> = removed.iter().map(|b| vector::dist(b, p.x)).collect();
            let to_y: Vec<f64> = removed.iter().map(|b| vector::dist(b, p.y)).collect();
            let mut best = 0.0f64;
            for (i, a) in removed.iter().enumerate() {
                for (k, b) in removed.iter().enumerate() {
                    if i != k {
                        best = best.max(vector::dist(a, b) / (to_x[i] * to_y[k]));
                    }
                }
            }
            if fc.infinity_boundary() {
                // p = ∞ gives 1/|q-y|, q = ∞ gives 1/|p-x|
                for i in 0..removed.len() {
                    best = best.max(1.0 / to_y[i]).max(1.0 / to_x[i]);
                }
            }
            Ok(log1p(p.dist * best))
        }
        _ => Ok(rho_unchecked(domain, p.x, p.y, p.dist)),
    }
}

/// Numeric Seittenranta supremum over pairs of boundary points of the ball,
/// searched on the great circle through `x` and `y` by alternating
/// maximization. Used to validate the identity `δ = ρ` on the ball; finite
/// complements are delegated to [`delta_metric`].
pub fn delta_pair_sup(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    match domain {
        Domain::FiniteComplement(_) => delta_metric(domain, x, y),
        Domain::UpperHalfSpace { .. } => Err(Error::UnsupportedDomain(
            "numeric pair supremum is implemented for the unit ball",
        )),
        Domain::UnitBall { .. } => {
            let p = pair(domain, x, y)?;
            if p.coincident() {
                return Ok(0.0);
            }
            let frame = CircleFrame::new(p.x, p.y);
            let ratio = |phi_p: f64, phi_q: f64| {
                let (px, _) = frame.distances(phi_p);
                let (_, qy) = frame.distances(phi_q);
                let pq = 2.0 * libm::sin(0.5 * (phi_p - phi_q)).abs();
                pq * p.dist / (px * qy)
            };
            let n = 128;
            let h = 2.0 * core::f64::consts::PI / n as f64;
            let mut best = (0.0, 0.0, f64::NEG_INFINITY);
            for i in 0..n {
                for k in 0..n {
                    let (a, b) = (i as f64 * h, k as f64 * h);
                    let v = ratio(a, b);
                    if v > best.2 {
                        best = (a, b, v);
                    }
                }
            }
            let config = SupConfig::default();
            let seeds = frame.seeds();
            let (_, mut phi_q, mut value) = best;
            for _ in 0..50 {
                let (np, _) = maximize_periodic(&|t| ratio(t, phi_q), &config, &seeds);
                let (nq, nv) = maximize_periodic(&|t| ratio(np, t), &config, &seeds);
                if nv <= value * (1.0 + 1e-15) {
                    break;
                }
                phi_q = nq;
                value = nv;
            }
            Ok(log1p(value))
        }
    }
}

/// Apollonian metric in the two-supremum form
/// `sup_p log(|p-y|/|p-x|) + sup_q log(|q-x|/|q-y|)`.
pub fn alpha_metric(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    alpha_with(&SupConfig::default(), domain, x, y)
}

/// `∞` contributes `log 1 = 0` to each term when it is a boundary point.
fn infinity_term(domain: &Domain) -> Option<f64> {
    match domain {
        Domain::UnitBall { .. } => None,
        Domain::UpperHalfSpace { .. } => Some(0.0),
        Domain::FiniteComplement(fc) => fc.infinity_boundary().then_some(0.0),
    }
}

fn alpha_with(
    config: &SupConfig,
    domain: &Domain,
    x: &ExtendedPoint,
    y: &ExtendedPoint,
) -> Result<f64> {
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    let (toward_x, toward_y) = alpha_terms(config, domain, p.x, p.y)?;
    Ok(toward_x.value + toward_y.value)
}

fn alpha_terms(
    config: &SupConfig,
    domain: &Domain,
    x: &[f64],
    y: &[f64],
) -> Result<(crate::sup::BoundaryWitness, crate::sup::BoundaryWitness)> {
    let inf = infinity_term(domain);
    let first = boundary_sup_with(config, domain, x, y, |dx, dy| log(dy / dx), inf)?;
    let second = boundary_sup_with(config, domain, x, y, |dx, dy| log(dx / dy), inf)?;
    Ok((first, second))
}

/// Apollonian metric in the pair form `sup_{p,q ∈ ∂D} log |p,x,y,q|`,
/// evaluated through [`cross_ratio`]. Exact on finite complements; on the
/// ball and half-space the pair is obtained by maximizing over `p` and then
/// over `q`.
pub fn alpha_pair_form(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    match domain {
        Domain::FiniteComplement(fc) => {
            let mut boundary: Vec<ExtendedPoint> = fc
                .removed()
                .iter()
                .map(|b| ExtendedPoint::Finite(b.clone()))
                .collect();
            if fc.infinity_boundary() {
                boundary.push(ExtendedPoint::Infinity);
            }
            let mut best = f64::NEG_INFINITY;
            for a in &boundary {
                for b in &boundary {
                    let v = if a.is_infinity() && b.is_infinity() {
                        1.0
                    } else {
                        cross_ratio(a, x, y, b)?
                    };
                    best = best.max(v);
                }
            }
            Ok(log(best))
        }
        _ => {
            let (wp, wq) = alpha_terms(&SupConfig::default(), domain, p.x, p.y)?;
            if wp.point.is_infinity() && wq.point.is_infinity() {
                return Ok(0.0);
            }
            Ok(log(cross_ratio(&wp.point, x, y, &wq.point)?))
        }
    }
}

/// Half-Apollonian metric `sup_{p ∈ ∂D} |log(|x-p| / |y-p|)|` over the finite
/// boundary.
pub fn eta_metric(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    eta_with(&SupConfig::default(), domain, x, y)
}

fn eta_with(
    config: &SupConfig,
    domain: &Domain,
    x: &ExtendedPoint,
    y: &ExtendedPoint,
) -> Result<f64> {
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    let w = boundary_sup_with(config, domain, p.x, p.y, |dx, dy| log(dx / dy).abs(), None)?;
    Ok(w.value)
}

/// Cassinian metric `sup_{p ∈ ∂D} |x-y| / (|x-p| |y-p|)` over the finite
/// boundary.
pub fn cassinian(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    cassinian_with(&SupConfig::default(), domain, x, y)
}

fn cassinian_with(
    config: &SupConfig,
    domain: &Domain,
    x: &ExtendedPoint,
    y: &ExtendedPoint,
) -> Result<f64> {
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    let dist = p.dist;
    let w = boundary_sup_with(config, domain, p.x, p.y, |dx, dy| dist / (dx * dy), None)?;
    Ok(w.value)
}

/// Triangular ratio metric `sup_{p ∈ ∂D} |x-y| / (|x-p| + |y-p|)` over the
/// finite boundary.
pub fn triangular_ratio(domain: &Domain, x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    triangular_with(&SupConfig::default(), domain, x, y)
}

fn triangular_with(
    config: &SupConfig,
    domain: &Domain,
    x: &ExtendedPoint,
    y: &ExtendedPoint,
) -> Result<f64> {
    let p = pair(domain, x, y)?;
    if p.coincident() {
        return Ok(0.0);
    }
    let dist = p.dist;
    let w = boundary_sup_with(config, domain, p.x, p.y, |dx, dy| dist / (dx + dy), None)?;
    Ok(w.value.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    const LN_3: f64 = 1.098_612_288_668_109_8;

    fn pt(c: &[f64]) -> ExtendedPoint {
        ExtendedPoint::from_slice(c).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn ball() -> Domain {
        Domain::unit_ball(2).unwrap()
    }

    fn punctured(points: &[&[f64]], inf: bool) -> Domain {
        Domain::punctured(points.iter().map(|p| p.to_vec()).collect(), inf).unwrap()
    }

    #[test]
    fn u_examples() {
        let o = pt(&[0.0, 0.0]);
        let h = pt(&[0.5, 0.0]);
        // 2 log(1.5 / sqrt(0.5))
        close(u_metric(&ball(), &o, &h).unwrap(), 1.504_077_396_776_274, 1e-14);
        let d = punctured(&[&[1.0, 0.0]], false);
        // 2 log((1 + 3t) / sqrt(1 - t^2)) at t = 1/2
        let v = u_metric(&d, &pt(&[0.5, 0.0]), &pt(&[-0.5, 0.0])).unwrap();
        close(v, 2.0 * log(2.5 / sqrt(0.75)), 1e-14);
        close(v, 2.120_263_536_200_091_4, 1e-14);
        assert_eq!(u_metric(&d, &h, &h), Ok(0.0));
    }

    #[test]
    fn u_membership_errors() {
        assert_eq!(
            u_metric(&ball(), &pt(&[2.0, 0.0]), &pt(&[0.0, 0.0])),
            Err(Error::NotInDomain)
        );
        assert_eq!(
            u_metric(&ball(), &ExtendedPoint::Infinity, &pt(&[0.0, 0.0])),
            Err(Error::NotInDomain)
        );
    }

    #[test]
    fn rho_examples() {
        close(rho(&ball(), &pt(&[0.0, 0.0]), &pt(&[0.5, 0.0])).unwrap(), LN_3, 1e-15);
        let h = Domain::upper_half_space(2).unwrap();
        close(rho(&h, &pt(&[0.0, 1.0]), &pt(&[0.0, 2.0])).unwrap(), LN_2, 1e-15);
        assert_eq!(rho(&ball(), &pt(&[0.3, 0.1]), &pt(&[0.3, 0.1])), Ok(0.0));
        assert!(matches!(
            rho(&punctured(&[&[0.0, 0.0]], true), &pt(&[1.0, 0.0]), &pt(&[2.0, 0.0])),
            Err(Error::UnsupportedDomain(_))
        ));
    }

    #[test]
    fn rho_log_forms_agree() {
        // explicit logarithmic forms of the ball and half-space metrics
        let b = ball();
        let x = [0.3, -0.55];
        let y = [-0.7, 0.2];
        let d = vector::dist(&x, &y);
        let a = (1.0 - vector::norm_sq(&x)) * (1.0 - vector::norm_sq(&y));
        let expected = 2.0 * log((sqrt(d * d + a) + d) / sqrt(a));
        close(rho(&b, &pt(&x), &pt(&y)).unwrap(), expected, 1e-13);

        let h = Domain::upper_half_space(3).unwrap();
        let x = [0.3, -0.55, 0.2];
        let y = [-0.7, 0.2, 1.7];
        let d2 = vector::dist_sq(&x, &y);
        let q = x[2] * y[2];
        let expected = log(1.0 + (d2 + sqrt(d2 * d2 + 4.0 * q * d2)) / (2.0 * q));
        close(rho(&h, &pt(&x), &pt(&y)).unwrap(), expected, 1e-13);
    }

    #[test]
    fn rho_axial_examples() {
        close(rho_axial(&ball(), -0.5, 0.5).unwrap(), log(9.0), 1e-15);
        let h = Domain::upper_half_space(2).unwrap();
        close(rho_axial(&h, 1.0, 2.0).unwrap(), LN_2, 1e-15);
        assert_eq!(rho_axial(&ball(), 0.0, 0.0), Ok(0.0));
        assert!(rho_axial(&ball(), 0.5, 0.2).is_err());
        assert!(rho_axial(&ball(), -1.0, 0.2).is_err());
        assert!(rho_axial(&h, 0.0, 2.0).is_err());
    }

    #[test]
    fn j_examples() {
        let o = pt(&[0.0, 0.0]);
        let h = pt(&[0.5, 0.0]);
        close(j_metric(&ball(), &o, &h).unwrap(), LN_2, 1e-15);
        close(j_tilde(&ball(), &o, &h).unwrap(), 0.5 * LN_3, 1e-15);
        let d = punctured(&[&[0.0, 0.0]], false);
        let a = pt(&[1.0, 0.0]);
        let b = pt(&[-1.0, 0.0]);
        close(j_metric(&d, &a, &b).unwrap(), LN_3, 1e-15);
        close(j_tilde(&d, &a, &b).unwrap(), LN_3, 1e-15);
    }

    #[test]
    fn delta_examples() {
        let o = pt(&[0.0, 0.0]);
        let h = pt(&[0.5, 0.0]);
        close(delta_metric(&ball(), &o, &h).unwrap(), LN_3, 1e-15);
        let d = punctured(&[&[1.0, 0.0]], true);
        close(delta_metric(&d, &o, &h).unwrap(), LN_2, 1e-15);
        assert_eq!(delta_metric(&d, &h, &h), Ok(0.0));
        let lonely = punctured(&[&[1.0, 0.0]], false);
        assert_eq!(
            delta_metric(&lonely, &o, &h),
            Err(Error::BoundaryTooSmall {
                required: 2,
                found: 1
            })
        );
    }

    #[test]
    fn delta_matches_cross_ratio_enumeration() {
        let d = punctured(&[&[1.0, 0.0], &[-0.3, 2.0], &[0.5, -1.5]], true);
        let x = pt(&[0.2, 0.1]);
        let y = pt(&[-1.0, 0.7]);
        let Domain::FiniteComplement(fc) = &d else {
            unreachable!()
        };
        let mut boundary: Vec<ExtendedPoint> = fc
            .removed()
            .iter()
            .map(|p| ExtendedPoint::Finite(p.clone()))
            .collect();
        boundary.push(ExtendedPoint::Infinity);
        let mut best = 0.0f64;
        for (i, p) in boundary.iter().enumerate() {
            for (k, q) in boundary.iter().enumerate() {
                if i != k {
                    best = best.max(cross_ratio(p, &x, q, &y).unwrap());
                }
            }
        }
        close(delta_metric(&d, &x, &y).unwrap(), log1p(best), 1e-15);
    }

    #[test]
    fn delta_pair_sup_matches_rho_on_ball() {
        let b = Domain::unit_ball(3).unwrap();
        let x = pt(&[0.2, -0.1, 0.3]);
        let y = pt(&[-0.4, 0.5, 0.0]);
        let numeric = delta_pair_sup(&b, &x, &y).unwrap();
        close(numeric, rho(&b, &x, &y).unwrap(), 1e-9);
    }

    #[test]
    fn alpha_examples() {
        let o = pt(&[0.0, 0.0]);
        let h = pt(&[0.5, 0.0]);
        close(alpha_metric(&ball(), &o, &h).unwrap(), LN_3, 1e-12);

        let d = punctured(&[&[0.0, 0.0]], true);
        let x = pt(&[0.4, -1.1]);
        let mx = pt(&[-0.4, 1.1]);
        close(alpha_metric(&d, &x, &mx).unwrap(), 0.0, 1e-15);
        assert!(d.complement_on_sphere());

        let d = punctured(&[&[1.0, 0.0]], true);
        for t in [0.1, 0.5, 0.9] {
            let y = pt(&[t, 0.0]);
            let expected = log(1.0 / (1.0 - t));
            close(alpha_metric(&d, &o, &y).unwrap(), expected, 1e-14);
            close(eta_metric(&d, &o, &y).unwrap(), expected, 1e-14);
        }
    }

    #[test]
    fn alpha_forms_agree() {
        let d = punctured(&[&[1.0, 0.0], &[-0.3, 2.0], &[0.5, -1.5]], true);
        let x = pt(&[0.2, 0.1]);
        let y = pt(&[-1.0, 0.7]);
        close(
            alpha_metric(&d, &x, &y).unwrap(),
            alpha_pair_form(&d, &x, &y).unwrap(),
            1e-14,
        );
        let b = Domain::unit_ball(3).unwrap();
        let x = pt(&[0.2, -0.1, 0.3]);
        let y = pt(&[-0.4, 0.5, 0.0]);
        close(
            alpha_metric(&b, &x, &y).unwrap(),
            alpha_pair_form(&b, &x, &y).unwrap(),
            1e-9,
        );
    }

    #[test]
    fn eta_examples() {
        let o = pt(&[0.0, 0.0]);
        let h = pt(&[0.5, 0.0]);
        let d = punctured(&[&[1.0, 0.0]], false);
        close(eta_metric(&d, &o, &h).unwrap(), LN_2, 1e-15);
        let d0 = punctured(&[&[0.0, 0.0]], false);
        assert_eq!(eta_metric(&d0, &pt(&[0.3, 0.4]), &pt(&[-0.3, -0.4])), Ok(0.0));
        close(eta_metric(&ball(), &o, &h).unwrap(), LN_2, 1e-12);
    }

    #[test]
    fn cassinian_examples() {
        let o = pt(&[0.0, 0.0]);
        let h = pt(&[0.5, 0.0]);
        let d = punctured(&[&[1.0, 0.0]], false);
        close(cassinian(&d, &o, &h).unwrap(), 1.0, 1e-15);
        // equidistant from the puncture: |x-y| / |x-p|^2
        let p = [0.3, -0.2];
        let d = punctured(&[&p], true);
        let x = [p[0] + 0.6, p[1] + 0.8];
        let y = [p[0] - 1.0, p[1]];
        let expected = vector::dist(&x, &y) / 1.0;
        close(cassinian(&d, &pt(&x), &pt(&y)).unwrap(), expected, 1e-15);
        assert_eq!(cassinian(&d, &pt(&x), &pt(&x)), Ok(0.0));
    }

    #[test]
    fn triangular_examples() {
        let d = punctured(&[&[1.0, 0.0]], false);
        let t = 0.3;
        close(
            triangular_ratio(&d, &pt(&[t, 0.0]), &pt(&[-t, 0.0])).unwrap(),
            t,
            1e-15,
        );
        let d0 = punctured(&[&[0.0, 0.0]], false);
        assert_eq!(
            triangular_ratio(&d0, &pt(&[0.3, 0.4]), &pt(&[-0.3, -0.4])),
            Ok(1.0)
        );
        close(
            triangular_ratio(&ball(), &pt(&[0.0, 0.0]), &pt(&[0.5, 0.0])).unwrap(),
            1.0 / 3.0,
            1e-12,
        );
    }

    #[test]
    fn metric_names_round_trip() {
        for m in MetricId::ALL {
            assert_eq!(m.name().parse::<MetricId>(), Ok(m));
        }
        assert!("nope".parse::<MetricId>().is_err());
    }

    #[test]
    fn evaluability() {
        let h = Domain::upper_half_space(2).unwrap();
        let single = punctured(&[&[0.0, 0.0]], false);
        assert!(MetricId::Rho.is_evaluable(&h));
        assert!(!MetricId::Rho.is_evaluable(&single));
        assert!(!MetricId::Delta.is_evaluable(&single));
        assert!(MetricId::Delta.is_evaluable(&punctured(&[&[0.0, 0.0]], true)));
    }
}

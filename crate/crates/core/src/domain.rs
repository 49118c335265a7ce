//! The three canonical domains: unit ball, upper half-space and the
//! complement of finitely many points.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::point::{check_coords, vector, ExtendedPoint};

/// `R^n` minus finitely many points. When `infinity_boundary` is set the
/// domain is read as a subset of `R^n`, so `∞` belongs to its boundary in the
/// extended space; otherwise `∞` is an interior point.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteComplement {
    dim: usize,
    removed: Vec<Vec<f64>>,
    infinity_boundary: bool,
}

impl FiniteComplement {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn removed(&self) -> &[Vec<f64>] {
        &self.removed
    }

    pub fn infinity_boundary(&self) -> bool {
        self.infinity_boundary
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// `{ z : |z| < 1 }`
    UnitBall { dim: usize },
    /// `{ x : x_n > 0 }`
    UpperHalfSpace { dim: usize },
    FiniteComplement(FiniteComplement),
}

impl Domain {
    pub fn unit_ball(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Domain::UnitBall { dim })
    }

    pub fn upper_half_space(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Domain::UpperHalfSpace { dim })
    }

    /// `R^n` minus `removed`. Duplicates are rejected so that boundary
    /// indices (and therefore witnesses) are well defined.
    pub fn punctured(removed: Vec<Vec<f64>>, infinity_boundary: bool) -> Result<Self> {
        let first = removed.first().ok_or(Error::EmptyBoundary)?;
        let dim = first.len();
        for p in &removed {
            check_coords(p)?;
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        for (i, p) in removed.iter().enumerate() {
            if removed[..i].iter().any(|q| q == p) {
                return Err(Error::InvalidParameter("removed points must be distinct"));
            }
        }
        Ok(Domain::FiniteComplement(FiniteComplement {
            dim,
            removed,
            infinity_boundary,
        }))
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::UnitBall { dim } | Domain::UpperHalfSpace { dim } => *dim,
            Domain::FiniteComplement(fc) => fc.dim,
        }
    }

    pub fn is_convex(&self) -> bool {
        !matches!(self, Domain::FiniteComplement(_))
    }

    /// Membership for finite coordinates of the right dimension.
    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim() || x.iter().any(|c| !c.is_finite()) {
            return false;
        }
        match self {
            Domain::UnitBall { .. } => vector::one_minus_norm_sq(x) > 0.0,
            Domain::UpperHalfSpace { dim } => x[dim - 1] > 0.0,
            Domain::FiniteComplement(fc) => fc.removed.iter().all(|p| p.as_slice() != x),
        }
    }

    /// Returns the coordinates of `x` if it is a finite point of the domain.
    pub fn member<'a>(&self, x: &'a ExtendedPoint) -> Result<&'a [f64]> {
        let c = x.finite()?;
        if c.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: c.len(),
            });
        }
        if !self.contains(c) {
            return Err(Error::NotInDomain);
        }
        Ok(c)
    }

    /// Euclidean distance from `x` to the finite boundary.
    pub fn distance_to_boundary(&self, x: &ExtendedPoint) -> Result<f64> {
        let c = self.member(x)?;
        Ok(self.boundary_distance(c))
    }

    /// Distance to the finite boundary for coordinates already known to be
    /// inside the domain.
    pub(crate) fn boundary_distance(&self, x: &[f64]) -> f64 {
        match self {
            Domain::UnitBall { .. } => vector::one_minus_norm(x),
            Domain::UpperHalfSpace { dim } => x[dim - 1],
            Domain::FiniteComplement(fc) => fc
                .removed
                .iter()
                .map(|p| vector::dist(x, p))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Number of points of the boundary in the extended space, `None` when it
    /// is a continuum.
    pub fn extended_boundary_len(&self) -> Option<usize> {
        match self {
            Domain::FiniteComplement(fc) => {
                Some(fc.removed.len() + usize::from(fc.infinity_boundary))
            }
            _ => None,
        }
    }

    /// Finite boundary points, for the domains whose boundary is finite.
    pub fn removed_points(&self) -> Option<&[Vec<f64>]> {
        match self {
            Domain::FiniteComplement(fc) => Some(&fc.removed),
            _ => None,
        }
    }

    /// Whether `p` lies on the boundary in the extended space, up to `tol`
    /// for the analytic boundaries.
    pub fn is_boundary_point(&self, p: &ExtendedPoint, tol: f64) -> bool {
        match (self, p) {
            (Domain::UnitBall { .. }, ExtendedPoint::Infinity) => false,
            (Domain::UpperHalfSpace { .. }, ExtendedPoint::Infinity) => true,
            (Domain::FiniteComplement(fc), ExtendedPoint::Infinity) => fc.infinity_boundary,
            (_, ExtendedPoint::Finite(c)) if c.len() != self.dim() => false,
            (Domain::UnitBall { .. }, ExtendedPoint::Finite(c)) => {
                (vector::norm(c) - 1.0).abs() <= tol
            }
            (Domain::UpperHalfSpace { dim }, ExtendedPoint::Finite(c)) => c[dim - 1].abs() <= tol,
            (Domain::FiniteComplement(fc), ExtendedPoint::Finite(c)) => {
                fc.removed.iter().any(|q| q.as_slice() == c.as_slice())
            }
        }
    }

    /// True when the complement of the domain in the extended space lies on a
    /// single generalized sphere (sphere or hyperplane with `∞`), in which
    /// case the Apollonian metric degenerates to a pseudo-metric.
    pub fn complement_on_sphere(&self) -> bool {
        match self {
            Domain::UnitBall { .. } | Domain::UpperHalfSpace { .. } => false,
            Domain::FiniteComplement(fc) => {
                if fc.infinity_boundary {
                    affine_rank(&fc.removed) < fc.dim
                } else {
                    let lifted: Vec<Vec<f64>> = fc
                        .removed
                        .iter()
                        .map(|p| {
                            let mut v = p.clone();
                            v.push(vector::norm_sq(p));
                            v
                        })
                        .collect();
                    affine_rank(&lifted) <= fc.dim
                }
            }
        }
    }

    /// True when the complement in `R^n` lies in a hyperplane, in which case
    /// the half-Apollonian metric is only a pseudo-metric.
    pub fn complement_in_hyperplane(&self) -> bool {
        match self {
            Domain::UnitBall { .. } => false,
            Domain::UpperHalfSpace { .. } => true,
            Domain::FiniteComplement(fc) => affine_rank(&fc.removed) < fc.dim,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::UnitBall { dim } => write!(f, "B^{dim}"),
            Domain::UpperHalfSpace { dim } => write!(f, "H^{dim}"),
            Domain::FiniteComplement(fc) => {
                write!(f, "R^{} \\ {{", fc.dim)?;
                for (i, p) in fc.removed.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    for (k, c) in p.iter().enumerate() {
                        if k > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{c}")?;
                    }
                }
                if fc.infinity_boundary {
                    write!(f, "; inf")?;
                }
                write!(f, "}}")
            }
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(Error::DimensionTooSmall(dim))
    } else {
        Ok(())
    }
}

/// Dimension of the affine hull of `points` (`0` for a single point).
fn affine_rank(points: &[Vec<f64>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let mut rows: Vec<Vec<f64>> = points[1..].iter().map(|p| vector::sub(p, base)).collect();
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let tol = 1e-10 * scale;
    let cols = base.len();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows.len()).max_by(|&a, &b| {
            rows[a][col]
                .abs()
                .partial_cmp(&rows[b][col].abs())
                .unwrap_or(core::cmp::Ordering::Equal)
        });
        let Some(pivot) = pivot else { break };
        if rows[pivot][col].abs() <= tol {
            continue;
        }
        rows.swap(rank, pivot);
        let pr = rows[rank].clone();
        for r in rows.iter_mut().skip(rank + 1) {
            let factor = r[col] / pr[col];
            for (v, p) in r.iter_mut().zip(&pr) {
                *v -= factor * p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn e(dim: usize, i: usize, t: f64) -> ExtendedPoint {
        ExtendedPoint::on_axis(dim, i, t).unwrap()
    }

    #[test]
    fn distance_examples() {
        let ball = Domain::unit_ball(3).unwrap();
        assert_eq!(
            ball.distance_to_boundary(&ExtendedPoint::origin(3).unwrap()),
            Ok(1.0)
        );

        let h = Domain::upper_half_space(3).unwrap();
        let t = 0.37;
        let x = ExtendedPoint::new(vec![1.0, 0.0, t]).unwrap();
        assert_eq!(h.distance_to_boundary(&x), Ok(t));

        let d = Domain::punctured(vec![vec![1.0, 0.0]], false).unwrap();
        assert_eq!(d.distance_to_boundary(&e(2, 0, 0.5)), Ok(0.5));
    }

    #[test]
    fn distance_rejects_outside_and_infinity() {
        let ball = Domain::unit_ball(2).unwrap();
        assert_eq!(
            ball.distance_to_boundary(&e(2, 0, 1.0)),
            Err(Error::NotInDomain)
        );
        assert_eq!(
            ball.distance_to_boundary(&ExtendedPoint::Infinity),
            Err(Error::NotInDomain)
        );
        let h = Domain::upper_half_space(2).unwrap();
        assert_eq!(h.distance_to_boundary(&e(2, 1, -1.0)), Err(Error::NotInDomain));
        let d = Domain::punctured(vec![vec![1.0, 0.0]], true).unwrap();
        assert_eq!(d.distance_to_boundary(&e(2, 0, 1.0)), Err(Error::NotInDomain));
        assert!(matches!(
            d.distance_to_boundary(&e(3, 0, 0.5)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn punctured_validation() {
        assert_eq!(Domain::punctured(vec![], true), Err(Error::EmptyBoundary));
        assert!(Domain::punctured(vec![vec![0.0, 0.0], vec![0.0, 0.0]], true).is_err());
        assert!(Domain::punctured(vec![vec![0.0, 0.0], vec![0.0, 0.0, 1.0]], true).is_err());
    }

    #[test]
    fn boundary_cardinality() {
        let one = Domain::punctured(vec![vec![1.0, 0.0]], false).unwrap();
        assert_eq!(one.extended_boundary_len(), Some(1));
        let flagged = Domain::punctured(vec![vec![1.0, 0.0]], true).unwrap();
        assert_eq!(flagged.extended_boundary_len(), Some(2));
        assert_eq!(Domain::unit_ball(2).unwrap().extended_boundary_len(), None);
    }

    #[test]
    fn sphere_condition() {
        // one point plus infinity lies on every hyperplane through it
        let d = Domain::punctured(vec![vec![0.0, 0.0, 0.0]], true).unwrap();
        assert!(d.complement_on_sphere());
        let tetra = vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        let d = Domain::punctured(tetra.clone(), true).unwrap();
        assert!(!d.complement_on_sphere());
        // four points in R^3 always lie on a sphere or a plane
        let d = Domain::punctured(tetra.clone(), false).unwrap();
        assert!(d.complement_on_sphere());
        let mut five = tetra;
        five.push(vec![0.3, 0.2, 0.1]);
        let d = Domain::punctured(five, false).unwrap();
        assert!(!d.complement_on_sphere());
        assert!(!Domain::unit_ball(3).unwrap().complement_on_sphere());
    }
}

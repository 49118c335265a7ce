//! Möbius transformations of `R^n ∪ {∞}` as ordered compositions of
//! translations, scalings, orthogonal maps and sphere inversions.

use alloc::vec;
use alloc::vec::Vec;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::point::{check_coords, vector, ExtendedPoint};

#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `x ↦ x + b`
    Translation(Vec<f64>),
    /// `x ↦ λ x`, `λ > 0`
    Scaling(f64),
    /// `x ↦ Q x` with `Q` orthogonal, stored row-major.
    Orthogonal(Vec<Vec<f64>>),
    /// `x ↦ a + r² (x - a) / |x - a|²`
    SphereInversion { center: Vec<f64>, radius: f64 },
}

impl Generator {
    fn apply(&self, x: &ExtendedPoint) -> ExtendedPoint {
        match (self, x) {
            (Generator::SphereInversion { center, .. }, ExtendedPoint::Infinity) => {
                ExtendedPoint::Finite(center.clone())
            }
            (_, ExtendedPoint::Infinity) => ExtendedPoint::Infinity,
            (Generator::Translation(b), ExtendedPoint::Finite(c)) => {
                ExtendedPoint::Finite(vector::add(c, b))
            }
            (Generator::Scaling(l), ExtendedPoint::Finite(c)) => {
                ExtendedPoint::Finite(vector::scale(c, *l))
            }
            (Generator::Orthogonal(q), ExtendedPoint::Finite(c)) => {
                ExtendedPoint::Finite(q.iter().map(|row| vector::dot(row, c)).collect())
            }
            (Generator::SphereInversion { center, radius }, ExtendedPoint::Finite(c)) => {
                let d = vector::sub(c, center);
                let n2 = vector::norm_sq(&d);
                if n2 == 0.0 {
                    return ExtendedPoint::Infinity;
                }
                let k = radius * radius / n2;
                let image: Vec<f64> = center.iter().zip(&d).map(|(a, v)| a + k * v).collect();
                if image.iter().all(|v| v.is_finite()) {
                    ExtendedPoint::Finite(image)
                } else {
                    ExtendedPoint::Infinity
                }
            }
        }
    }

    fn inverse(&self) -> Generator {
        match self {
            Generator::Translation(b) => Generator::Translation(b.iter().map(|v| -v).collect()),
            Generator::Scaling(l) => Generator::Scaling(1.0 / l),
            Generator::Orthogonal(q) => {
                let n = q.len();
                Generator::Orthogonal(
                    (0..n).map(|i| (0..n).map(|k| q[k][i]).collect()).collect(),
                )
            }
            inv @ Generator::SphereInversion { .. } => inv.clone(),
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        let check_len = |len: usize| {
            if len == dim {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    expected: dim,
                    found: len,
                })
            }
        };
        match self {
            Generator::Translation(b) => {
                check_len(b.len())?;
                check_coords(b)
            }
            Generator::Scaling(l) => {
                if l.is_finite() && *l > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter("scaling factor must be positive"))
                }
            }
            Generator::Orthogonal(q) => {
                check_len(q.len())?;
                for row in q {
                    check_len(row.len())?;
                    check_coords(row)?;
                }
                for i in 0..dim {
                    for k in 0..dim {
                        let g: f64 = (0..dim).map(|m| q[m][i] * q[m][k]).sum();
                        let target = if i == k { 1.0 } else { 0.0 };
                        if (g - target).abs() > 1e-10 {
                            return Err(Error::InvalidParameter("matrix is not orthogonal"));
                        }
                    }
                }
                Ok(())
            }
            Generator::SphereInversion { center, radius } => {
                check_len(center.len())?;
                check_coords(center)?;
                if radius.is_finite() && *radius > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter("inversion radius must be positive"))
                }
            }
        }
    }
}

/// A Möbius transformation. Generators are stored in application order: the
/// first generator acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusMap {
    dim: usize,
    generators: Vec<Generator>,
}

impl MobiusMap {
    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_generators(dim, Vec::new())
    }

    pub fn from_generators(dim: usize, generators: Vec<Generator>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        for g in &generators {
            g.validate(dim)?;
        }
        Ok(MobiusMap { dim, generators })
    }

    pub fn translation(b: Vec<f64>) -> Result<Self> {
        Self::from_generators(b.len(), vec![Generator::Translation(b)])
    }

    pub fn scaling(dim: usize, factor: f64) -> Result<Self> {
        Self::from_generators(dim, vec![Generator::Scaling(factor)])
    }

    pub fn orthogonal(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_generators(rows.len(), vec![Generator::Orthogonal(rows)])
    }

    pub fn sphere_inversion(center: Vec<f64>, radius: f64) -> Result<Self> {
        Self::from_generators(center.len(), vec![Generator::SphereInversion { center, radius }])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Applies the map; poles go to `∞` and `∞` goes to its image.
    ///
    /// # Panics
    ///
    /// If `x` is finite with a dimension different from the map's.
    pub fn apply(&self, x: &ExtendedPoint) -> ExtendedPoint {
        if let Some(d) = x.dim() {
            assert_eq!(d, self.dim, "point dimension does not match the map");
        }
        self.generators
            .iter()
            .fold(x.clone(), |acc, g| g.apply(&acc))
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            dim: self.dim,
            generators: self.generators.iter().rev().map(Generator::inverse).collect(),
        }
    }

    /// `self ∘ inner`: apply `inner` first.
    ///
    /// # Panics
    ///
    /// If the dimensions differ.
    pub fn after(&self, inner: &MobiusMap) -> MobiusMap {
        compose(self, inner)
    }

    /// Image of a finite complement: boundary points (with `∞` when it is a
    /// boundary point) are mapped through the map, and `∞` becomes a
    /// boundary point exactly when some boundary point lands there. The
    /// canonical domains are not supported here.
    pub fn image_domain(&self, domain: &Domain) -> Result<Domain> {
        let Domain::FiniteComplement(fc) = domain else {
            return Err(Error::UnsupportedDomain(
                "image domains are computed for finite complements only",
            ));
        };
        if fc.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: fc.dim(),
            });
        }
        let mut boundary: Vec<ExtendedPoint> = fc
            .removed()
            .iter()
            .map(|p| ExtendedPoint::Finite(p.clone()))
            .collect();
        if fc.infinity_boundary() {
            boundary.push(ExtendedPoint::Infinity);
        }
        let mut removed = Vec::with_capacity(boundary.len());
        let mut infinity = false;
        for b in &boundary {
            match self.apply(b) {
                ExtendedPoint::Infinity => infinity = true,
                ExtendedPoint::Finite(c) => removed.push(c),
            }
        }
        Domain::punctured(removed, infinity)
    }
}

/// `f ∘ g`: `apply(compose(f, g), x) == apply(f, apply(g, x))`.
///
/// # Panics
///
/// If the dimensions differ.
pub fn compose(f: &MobiusMap, g: &MobiusMap) -> MobiusMap {
    assert_eq!(f.dim, g.dim, "cannot compose maps of different dimensions");
    let mut generators = g.generators.clone();
    generators.extend(f.generators.iter().cloned());
    MobiusMap {
        dim: f.dim,
        generators,
    }
}

/// Möbius self-map of the unit ball sending `a` to the origin: inversion in
/// the sphere centered at `a* = a/|a|²` with radius `sqrt(|a*|² - 1)`, which
/// is orthogonal to the unit sphere.
pub fn ball_automorphism(a: &[f64]) -> Result<MobiusMap> {
    check_coords(a)?;
    let n2 = vector::norm_sq(a);
    if !(n2 > 0.0 && n2 < 1.0) {
        return Err(Error::InvalidParameter("need 0 < |a| < 1"));
    }
    let center = vector::scale(a, 1.0 / n2);
    // |a*|² - 1 = (1 - |a|²) / |a|²
    let radius = libm::sqrt(vector::one_minus_norm_sq(a) / n2);
    MobiusMap::sphere_inversion(center, radius)
}

/// `z ↦ -e_n + 2 (z + e_n) / |z + e_n|²`, mapping the upper half-space onto
/// the unit ball.
pub fn cayley_map(dim: usize) -> Result<MobiusMap> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    let mut en = vec![0.0; dim];
    en[dim - 1] = 1.0;
    let minus_en = vector::scale(&en, -1.0);
    MobiusMap::from_generators(
        dim,
        vec![
            Generator::Translation(en),
            Generator::SphereInversion {
                center: vec![0.0; dim],
                radius: core::f64::consts::SQRT_2,
            },
            Generator::Translation(minus_en),
        ],
    )
}

/// `z ↦ z / |z|²`, mapping the upper half-space onto itself.
pub fn inversion_unit(dim: usize) -> Result<MobiusMap> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    MobiusMap::sphere_inversion(vec![0.0; dim], 1.0)
}

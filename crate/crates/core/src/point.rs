//! Points of the extended Euclidean space `R^n ∪ {∞}` and the small amount of
//! vector arithmetic the rest of the crate needs.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A point of `R^n`, or the point at infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtendedPoint {
    Finite(Vec<f64>),
    Infinity,
}

impl ExtendedPoint {
    /// Builds a finite point, rejecting non-finite coordinates and `n < 2`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_coords(&coords)?;
        Ok(ExtendedPoint::Finite(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn origin(dim: usize) -> Result<Self> {
        Self::new(vec![0.0; dim])
    }

    /// `t · e_axis` (axes are zero-based, so `e_1` is `axis = 0`).
    pub fn on_axis(dim: usize, axis: usize, t: f64) -> Result<Self> {
        if axis >= dim {
            return Err(Error::InvalidParameter("axis index out of range"));
        }
        let mut c = vec![0.0; dim];
        c[axis] = t;
        Self::new(c)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }

    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            ExtendedPoint::Finite(c) => Some(c),
            ExtendedPoint::Infinity => None,
        }
    }

    /// Finite coordinates, or [`Error::NotInDomain`] for `∞`.
    pub fn finite(&self) -> Result<&[f64]> {
        self.coords().ok_or(Error::NotInDomain)
    }

    pub fn dim(&self) -> Option<usize> {
        self.coords().map(<[f64]>::len)
    }
}

impl TryFrom<&[f64]> for ExtendedPoint {
    type Error = Error;

    fn try_from(value: &[f64]) -> Result<Self> {
        Self::from_slice(value)
    }
}

pub(crate) fn check_coords(coords: &[f64]) -> Result<()> {
    if coords.len() < 2 {
        return Err(Error::DimensionTooSmall(coords.len()));
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFiniteCoordinate);
    }
    Ok(())
}

/// Euclidean vector helpers on coordinate slices.
pub mod vector {
    use super::*;

    pub fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    pub fn norm_sq(a: &[f64]) -> f64 {
        dot(a, a)
    }

    pub fn norm(a: &[f64]) -> f64 {
        libm::sqrt(norm_sq(a))
    }

    pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
    }

    pub fn dist(a: &[f64], b: &[f64]) -> f64 {
        libm::sqrt(dist_sq(a, b))
    }

    pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
        a.iter().map(|x| x * s).collect()
    }

    /// `1 - |a|^2` with the sum of squares carried in double-double, so the
    /// result keeps full relative accuracy when `|a|` is close to 1.
    pub fn one_minus_norm_sq(a: &[f64]) -> f64 {
        let (mut hi, mut lo) = (0.0f64, 0.0f64);
        for &x in a {
            let p = x * x;
            let pe = libm::fma(x, x, -p);
            let s = hi + p;
            let bp = s - hi;
            let se = (hi - (s - bp)) + (p - bp);
            hi = s;
            lo += se + pe;
        }
        (1.0 - hi) - lo
    }

    /// `1 - |a|`, accurate near the unit sphere.
    pub fn one_minus_norm(a: &[f64]) -> f64 {
        one_minus_norm_sq(a) / (1.0 + norm(a))
    }

    /// Angle between two nonzero vectors, accurate for nearly (anti)parallel
    /// inputs.
    pub fn angle_between(a: &[f64], b: &[f64]) -> f64 {
        let na = norm(a);
        let nb = norm(b);
        let mut diff = 0.0;
        let mut sum = 0.0;
        for (x, y) in a.iter().zip(b) {
            let u = x * nb;
            let v = y * na;
            diff += (u - v) * (u - v);
            sum += (u + v) * (u + v);
        }
        2.0 * libm::atan2(libm::sqrt(diff), libm::sqrt(sum))
    }
}

use crate::error::{Error, Result};
use crate::point::{vector, ExtendedPoint};

/// Absolute ratio `|p,x,q,y| = |p-q| |x-y| / (|p-x| |q-y|)`.
///
/// If one argument is `∞`, the two factors containing it cancel to 1.
pub fn cross_ratio(
    p: &ExtendedPoint,
    x: &ExtendedPoint,
    q: &ExtendedPoint,
    y: &ExtendedPoint,
) -> Result<f64> {
    let infinite = [p, x, q, y].iter().filter(|a| a.is_infinity()).count();
    if infinite > 1 {
        return Err(Error::UnsupportedInfinity);
    }
    let mut dims = [p, x, q, y].into_iter().filter_map(ExtendedPoint::dim);
    if let Some(expected) = dims.next() {
        if let Some(found) = dims.find(|&d| d != expected) {
            return Err(Error::DimensionMismatch { expected, found });
        }
    }
    if p == x || q == y {
        return Err(Error::DivisionByZero);
    }
    let d = |a: &ExtendedPoint, b: &ExtendedPoint| -> Option<f64> {
        match (a, b) {
            (ExtendedPoint::Finite(a), ExtendedPoint::Finite(b)) => Some(vector::dist(a, b)),
            _ => None,
        }
    };
    // numerator factors |p-q|, |x-y|; denominator factors |p-x|, |q-y|
    let value = match (p, x, q, y) {
        (ExtendedPoint::Infinity, ..) => d(x, y).unwrap() / d(q, y).unwrap(),
        (_, ExtendedPoint::Infinity, ..) => d(p, q).unwrap() / d(q, y).unwrap(),
        (_, _, ExtendedPoint::Infinity, _) => d(x, y).unwrap() / d(p, x).unwrap(),
        (.., ExtendedPoint::Infinity) => d(p, q).unwrap() / d(p, x).unwrap(),
        _ => {
            let num = d(p, q).unwrap() * d(x, y).unwrap();
            let den = d(p, x).unwrap() * d(q, y).unwrap();
            num / den
        }
    };
    if !value.is_finite() {
        return Err(Error::DivisionByZero);
    }
    Ok(value)
}

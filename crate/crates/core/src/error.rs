use core::fmt;

/// Errors produced by geometry, metric and Möbius operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coordinate was NaN or infinite.
    NonFiniteCoordinate,
    /// Dimension below 2.
    DimensionTooSmall(usize),
    /// Two points (or a point and a domain) disagree on dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// The point is not inside the domain (or is the point at infinity).
    NotInDomain,
    /// A cross-ratio factor in a denominator vanished.
    DivisionByZero,
    /// More than one argument of a cross-ratio was the point at infinity.
    UnsupportedInfinity,
    /// The metric is not defined on this kind of domain.
    UnsupportedDomain(&'static str),
    /// The (extended) boundary has too few points for the metric.
    BoundaryTooSmall { required: usize, found: usize },
    /// The domain has no boundary at all.
    EmptyBoundary,
    /// A parameter was outside its admissible range.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFiniteCoordinate => write!(f, "coordinate is not a finite number"),
            Error::DimensionTooSmall(n) => write!(f, "dimension must be at least 2, got {n}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotInDomain => write!(f, "point does not lie in the domain"),
            Error::DivisionByZero => write!(f, "cross-ratio denominator vanishes"),
            Error::UnsupportedInfinity => {
                write!(f, "at most one cross-ratio argument may be the point at infinity")
            }
            Error::UnsupportedDomain(what) => write!(f, "unsupported domain: {what}"),
            Error::BoundaryTooSmall { required, found } => write!(
                f,
                "boundary must contain at least {required} points, found {found}"
            ),
            Error::EmptyBoundary => write!(f, "domain has an empty boundary"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

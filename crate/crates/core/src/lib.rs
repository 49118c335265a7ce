//! Hyperbolic-type metrics on canonical Euclidean domains.
//!
//! The central object is the Gromov hyperbolization metric
//!
//! ```text
//! u_D(x, y) = 2 log[(|x-y| + max{d(x), d(y)}) / sqrt(d(x) d(y))]
//! ```
//!
//! where `d(x)` is the Euclidean distance from `x` to the boundary of `D`.
//! Alongside it the crate evaluates the hyperbolic metric of the ball and the
//! half-space, both distance ratio metrics, the Seittenranta, Apollonian,
//! half-Apollonian, Cassinian and triangular ratio metrics, and provides
//! Möbius transformations of the extended space.
//!
//! Domains are the unit ball, the upper half-space and `R^n` minus finitely
//! many points. Boundary suprema are exact on finite boundaries and found by
//! a reduced one-parameter search on the sphere and the hyperplane (see
//! [`sup`]).
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod cross_ratio;
pub mod domain;
pub mod error;
pub mod metrics;
pub mod mobius;
pub mod point;
pub mod sup;

pub use cross_ratio::cross_ratio;
pub use domain::{Domain, FiniteComplement};
pub use error::{Error, Result};
pub use metrics::{
    alpha_metric, alpha_pair_form, cassinian, delta_metric, delta_pair_sup, eta_metric, j_metric,
    j_tilde, rho, rho_axial, triangular_ratio, u_metric, MetricId,
};
pub use mobius::{ball_automorphism, cayley_map, compose, inversion_unit, Generator, MobiusMap};
pub use point::ExtendedPoint;
pub use sup::{boundary_sup, boundary_sup_with, BoundaryWitness, SupConfig};

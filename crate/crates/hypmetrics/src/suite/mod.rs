//! Catalog of inequalities and sharpness probes with a seeded verification
//! engine.

pub mod catalog;
pub mod check;
pub mod expr;
pub mod probe;
pub mod sample;

pub use catalog::{catalog, Catalog, InequalityCase};
pub use check::check_case;
pub use probe::{run_probe, run_series, Direction, SharpnessProbe};

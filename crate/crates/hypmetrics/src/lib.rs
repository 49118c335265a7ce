//! Verification harness and command-line front end for `hypmetrics-core`.
//!
//! [`suite`] holds the inequality catalog, the samplers and the probe
//! runner; [`report`] the serializable records; [`cli`] the `hypmetrics`
//! binary.

pub mod cli;
pub mod error;
pub mod format;
pub mod report;
pub mod suite;

pub use error::{Error, Result};

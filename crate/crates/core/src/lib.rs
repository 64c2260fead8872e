//! Adaptive reference-set evolutionary multiobjective optimisation.
//!
//! Reference points live on the plane `sum f = 0` through the origin of the
//! normalised objective space. The search alternates between the fixed
//! initial reference set and one that evolves towards the shape of the
//! current nondominated archive. The crate also provides the benchmark
//! problems, a Tchebycheff MOEA/D baseline and the quality indicators used to
//! compare them.

pub mod area;
pub mod error;
pub mod metrics;
pub mod moead;
pub mod pareto;
pub mod problems;
pub mod reference;
pub mod variation;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};

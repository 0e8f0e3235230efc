//! Bipartite point-set matching under concave transport costs.
//!
//! The crate provides four matchers (greedy nearest pair, Dyck, sorted and an
//! exact assignment solver) plus a brute-force oracle, the diagnostics used to
//! compare them, numerical checks of the known upper and lower bounds, seeded
//! instance generation and a Monte-Carlo experiment harness.

pub mod analysis;
pub mod bounds;
pub mod cost;
mod error;
pub mod experiment;
pub mod instance;
pub mod matching;
pub mod numeric;
pub mod points;
pub mod render;

pub use cost::CostSpec;
pub use error::{Error, Result};
pub use instance::{Family, Instance, InstanceSpec};
pub use matching::{Edge, Matching, Method};
pub use points::{DistanceMatrix, PointSet};

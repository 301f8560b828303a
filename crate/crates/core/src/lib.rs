//! Neighborhood complexes of graphs.
//!
//! Builds `N[G]`, computes its reduced homology exactly (directly or through
//! the Lovász retract), certifies sphere retractions from maximal cliques,
//! evaluates the random-graph vanishing bounds, and runs seeded surveys over
//! `G(n, p)`.

pub mod asymptotics;
pub mod caps;
pub mod certificates;
pub mod complex;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod homology;

pub use caps::Caps;
pub use error::{Error, Result};

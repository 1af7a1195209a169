//! Arc reversals, partial orientations and deorientations of mixed graphs.
//!
//! The crate provides a mixed multigraph model, connectivity oracles, exact
//! desk-scale solvers, polynomial-time and approximation algorithms, and
//! builders for the hardness gadgets together with their solution-lifting
//! maps.

pub mod connectivity;
pub mod error;
pub mod exact;
pub mod flow;
pub mod format;
pub mod gen;
pub mod graph;
pub mod polyalg;
pub mod reductions;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Arc, Edge, EdgeDecision, ElementRef, MixedGraph, PartialOrientation, VertexId};

/// Exact non-negative rational weight.
pub type Weight = num_rational::Ratio<i64>;

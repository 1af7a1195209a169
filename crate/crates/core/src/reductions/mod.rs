//! Gadget builders and instance transformations, each with solution-lifting
//! maps in both directions.

pub mod lco;
pub mod m2sar;
pub mod rocket;
pub mod sat;
pub mod sdo3;
pub mod vc4eda;

use serde::{Deserialize, Serialize};

use crate::graph::MixedGraph;

/// A constructed instance with its budget and the role of every vertex.
/// Element roles are stored as labels on the graph's edges and arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionWitness {
    pub graph: MixedGraph,
    pub budget: usize,
    pub vertex_labels: Vec<String>,
}

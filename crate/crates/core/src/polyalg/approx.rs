//! The branching-based 2-approximation for deorienting to k-arc-strong and
//! the doubling wrapper for 4-edge-connectivity around a pluggable
//! augmentation solver.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::branching::{min_weight_branching_packing, BranchingPacking, Direction, PackingOutcome};
use crate::connectivity::{is_k_edge_connected, Target};
use crate::error::{Error, Result};
use crate::exact::SolveOptions;
use crate::graph::{MixedGraph, VertexId};
use crate::search::{minimize, Choice, Piece, SearchOutcome, SearchSpace};
use crate::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeorApprox {
    /// Arcs to deorient, sorted.
    pub deoriented: Vec<usize>,
    pub out_packing: BranchingPacking,
    pub in_packing: BranchingPacking,
}

/// Deorientation set of size at most twice the optimum making `d`
/// k-arc-strong, or `None` if `UG(d)` is not k-edge-connected. Every arc gets
/// a free copy and a unit-weight reversed copy; minimum-weight out- and
/// in-packings rooted at `root` are computed, and arcs whose reversed copy
/// is used are deoriented.
pub fn deor_k_arc_2approx(d: &MixedGraph, k: usize, root: VertexId) -> Result<Option<DeorApprox>> {
    if !d.is_digraph() {
        return Err(Error::Precondition("expected a digraph".into()));
    }
    if d.n() < 2 {
        return Err(Error::Precondition("at least two vertices required".into()));
    }
    if root >= d.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: d.n() });
    }
    if !is_k_edge_connected(d, k) {
        return Ok(None);
    }
    let m = d.num_arcs();
    let mut doubled = d.clone();
    let mut weights = vec![Weight::zero(); m];
    for a in d.arcs() {
        doubled.add_arc(a.head, a.tail)?;
        weights.push(Weight::one());
    }
    let pack = |dir| -> Result<BranchingPacking> {
        match min_weight_branching_packing(&doubled, k, root, &weights, dir)? {
            PackingOutcome::Packing(p) => Ok(p),
            PackingOutcome::Infeasible { .. } => {
                Err(Error::Precondition("doubled digraph unexpectedly not packable".into()))
            }
        }
    };
    let out_packing = pack(Direction::Out)?;
    let in_packing = pack(Direction::In)?;
    let mut deoriented: Vec<usize> = out_packing
        .arcs()
        .into_iter()
        .chain(in_packing.arcs())
        .filter(|&i| i >= m)
        .map(|i| i - m)
        .collect();
    deoriented.sort_unstable();
    deoriented.dedup();
    Ok(Some(DeorApprox { deoriented, out_packing, in_packing }))
}

/// Chooses which candidate edges to double so that a 3-edge-connected graph
/// becomes 4-edge-connected.
pub trait AugmentationSolver {
    /// `candidates` are edge indices of `g`; returns the chosen subset.
    fn augment(&self, g: &MixedGraph, candidates: &[usize]) -> Result<Vec<usize>>;
}

/// Exact plug: minimum-cardinality subset by cut-guided search.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactAugmentation {
    pub options: SolveOptions,
}

impl AugmentationSolver for ExactAugmentation {
    fn augment(&self, g: &MixedGraph, candidates: &[usize]) -> Result<Vec<usize>> {
        let elements = candidates
            .iter()
            .map(|&i| {
                let e = &g.edges()[i];
                vec![Choice::new(vec![Piece::Edge(e.u, e.v)], Weight::one()), Choice::free(vec![])]
            })
            .collect();
        let target = Target::ArcStrong(4);
        let per_call = self.options.cuts_per_call;
        let rep = minimize(
            &SearchSpace { base: g.clone(), elements },
            |m: &MixedGraph| target.violations(m, per_call),
            None,
            self.options.limits,
        )?;
        match rep.outcome {
            SearchOutcome::Optimal { choices, .. } => {
                Ok(candidates.iter().zip(choices).filter(|(_, c)| *c == 0).map(|(&i, _)| i).collect())
            }
            _ => Err(Error::Precondition("candidate edges cannot reach 4-edge-connectivity".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct M4edaResult {
    /// Edges lying in some 2-edge-cut.
    pub forced: Vec<usize>,
    /// Edges chosen by the plug.
    pub chosen: Vec<usize>,
    /// Union of both, sorted.
    pub doubled: Vec<usize>,
}

/// Edges of `g` that lie in some 2-edge-cut (`g` 2-edge-connected).
pub fn edges_in_two_cuts(g: &MixedGraph) -> Vec<usize> {
    (0..g.num_edges())
        .filter(|&i| {
            let rest: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, e)| (e.u, e.v))
                .collect();
            let h = MixedGraph::from_edges(g.n(), &rest).expect("valid edges");
            !is_k_edge_connected(&h, 2)
        })
        .collect()
}

/// Doubles every edge in a 2-edge-cut, then lets `inner` pick among the
/// remaining edges; the doubled set makes `g` 4-edge-connected and is a
/// β-approximation whenever `inner` is.
pub fn m4eda_approx(g: &MixedGraph, inner: &dyn AugmentationSolver) -> Result<M4edaResult> {
    if !g.is_graph() {
        return Err(Error::Precondition("expected an undirected graph".into()));
    }
    if !is_k_edge_connected(g, 2) {
        return Err(Error::Precondition("graph is not 2-edge-connected".into()));
    }
    let forced = edges_in_two_cuts(g);
    let g1 = g.double_edges(&forced)?;
    let mut is_forced = vec![false; g.num_edges()];
    for &i in &forced {
        is_forced[i] = true;
    }
    let candidates: Vec<usize> = (0..g.num_edges()).filter(|&i| !is_forced[i]).collect();
    let mut chosen = inner.augment(&g1, &candidates)?;
    chosen.sort_unstable();
    if chosen.iter().any(|i| is_forced[*i] || *i >= g.num_edges()) {
        return Err(Error::Precondition("plug returned a non-candidate edge".into()));
    }
    let mut doubled: Vec<usize> = forced.iter().chain(&chosen).copied().collect();
    doubled.sort_unstable();
    Ok(M4edaResult { forced, chosen, doubled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_k_arc_strong;

    #[test]
    fn strong_digraph_needs_nothing() {
        let c3 = MixedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = deor_k_arc_2approx(&c3, 1, 0).unwrap().unwrap();
        assert!(r.deoriented.is_empty());
    }

    #[test]
    fn path_deorients_everything() {
        let p = MixedGraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        let r = deor_k_arc_2approx(&p, 1, 0).unwrap().unwrap();
        assert_eq!(r.deoriented, vec![0, 1]);
        assert!(is_k_arc_strong(&p.deorient_arcs(&r.deoriented).unwrap(), 1));
        assert!(deor_k_arc_2approx(&p, 2, 0).unwrap().is_none());
    }

    #[test]
    fn four_cycle_wrapper() {
        let c4 = MixedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = m4eda_approx(&c4, &ExactAugmentation::default()).unwrap();
        assert_eq!(r.forced, vec![0, 1, 2, 3]);
        assert_eq!(r.doubled.len(), 4);
        assert!(is_k_edge_connected(&c4.double_edges(&r.doubled).unwrap(), 4));
    }
}

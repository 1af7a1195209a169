//! Local-connectivity orientation: hardening to requirements that force
//! every edge, and the reduction to local-connectivity deorientation.

use serde::{Deserialize, Serialize};

use super::ReductionWitness;
use crate::connectivity::Requirement;
use crate::error::{Error, Result};
use crate::graph::{EdgeDecision, MixedGraph, VertexId};

/// Adds vertices `a = n` and `b = n + 1`, the edge `ab` and edges from both
/// to every original vertex. Original pairs require one more than before,
/// `a → b` requires `n`, every other pair touching `a` or `b` requires 1.
pub fn harden_lco(g: &MixedGraph, r: &Requirement) -> Result<(MixedGraph, Requirement)> {
    if !g.is_graph() {
        return Err(Error::Precondition("expected an undirected graph".into()));
    }
    let n = g.n();
    let mut h = g.clone();
    let a = h.add_vertex();
    let b = h.add_vertex();
    h.add_edge(a, b)?;
    for x in 0..n {
        h.add_edge(a, x)?;
        h.add_edge(b, x)?;
    }
    let mut out = Requirement::new();
    for x in 0..n {
        for y in 0..n {
            if x != y {
                out.set(x, y, r.get(x, y) + 1);
            }
        }
        for z in [a, b] {
            out.set(x, z, 1);
            out.set(z, x, 1);
        }
    }
    out.set(a, b, n);
    out.set(b, a, 1);
    Ok((h, out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcdoReduction {
    pub witness: ReductionWitness,
    pub requirement: Requirement,
    /// Per edge `uv`: the arcs `u w_e` and `v w_e`.
    pub edge_arcs: Vec<[usize; 2]>,
    source: MixedGraph,
}

/// Replaces every edge `e = uv` by a vertex `w_e` and arcs `u w_e`, `v w_e`.
/// The requirement keeps `r` on original pairs and asks 1 from each `w_e` to
/// every original vertex. Budget `|E|`.
pub fn reduce_lco_to_lcdo(g: &MixedGraph, r: &Requirement) -> Result<LcdoReduction> {
    if !g.is_graph() {
        return Err(Error::Precondition("expected an undirected graph".into()));
    }
    let n = g.n();
    for x in 0..n {
        for y in 0..n {
            if x != y && r.get(x, y) == 0 {
                return Err(Error::Precondition(format!("requirement from {x} to {y} is 0")));
            }
        }
    }
    if r.r.keys().any(|&(x, y)| x >= n || y >= n) {
        return Err(Error::Precondition("requirement names a vertex outside the graph".into()));
    }
    let mut d = MixedGraph::new(n);
    let mut labels: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let mut edge_arcs = Vec::with_capacity(g.num_edges());
    for (i, e) in g.edges().iter().enumerate() {
        let w = d.add_vertex();
        labels.push(format!("w_e{i}"));
        edge_arcs.push([d.add_arc(e.u, w)?, d.add_arc(e.v, w)?]);
    }
    let mut req = r.clone();
    for w in n..d.n() {
        for x in 0..n {
            req.set(w, x, 1);
        }
    }
    Ok(LcdoReduction {
        witness: ReductionWitness { graph: d, budget: g.num_edges(), vertex_labels: labels },
        requirement: req,
        edge_arcs,
        source: g.clone(),
    })
}

impl LcdoReduction {
    /// An edge oriented `u → v` deorients `v w_e`.
    pub fn lift_forward(&self, orientation: &[EdgeDecision]) -> Result<Vec<usize>> {
        if orientation.len() != self.source.num_edges() {
            return Err(Error::Precondition("orientation length differs from edge count".into()));
        }
        let mut f = Vec::with_capacity(orientation.len());
        for (i, dec) in orientation.iter().enumerate() {
            let e = &self.source.edges()[i];
            match *dec {
                EdgeDecision::Orient { tail, head } if e.joins(tail, head) => {
                    f.push(if head == e.u { self.edge_arcs[i][0] } else { self.edge_arcs[i][1] });
                }
                _ => return Err(Error::Precondition(format!("edge {i} is not oriented"))),
            }
        }
        f.sort_unstable();
        Ok(f)
    }

    /// Orients `e = uv` as `u → v` when `v w_e` was deoriented. Edges with
    /// neither or both arcs deoriented follow their stored order.
    pub fn lift_back(&self, deoriented: &[usize]) -> Vec<EdgeDecision> {
        self.source
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let into_u = deoriented.contains(&self.edge_arcs[i][0]);
                let into_v = deoriented.contains(&self.edge_arcs[i][1]);
                let (tail, head): (VertexId, VertexId) =
                    if into_u && !into_v { (e.v, e.u) } else { (e.u, e.v) };
                EdgeDecision::Orient { tail, head }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MixedGraph {
        MixedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn harden_requirements() {
        let g = triangle();
        let (h, r) = harden_lco(&g, &Requirement::uniform(3, 1)).unwrap();
        assert_eq!((h.n(), h.num_edges()), (5, 3 + 1 + 6));
        assert_eq!(r.get(3, 4), 3);
        assert_eq!(r.get(4, 3), 1);
        assert_eq!(r.get(0, 1), 2);
        assert_eq!(r.get(0, 3), 1);
    }

    #[test]
    fn triangle_counts() {
        let red = reduce_lco_to_lcdo(&triangle(), &Requirement::uniform(3, 1)).unwrap();
        assert_eq!(red.witness.graph.n(), 6);
        assert_eq!(red.witness.graph.num_arcs(), 6);
        assert_eq!(red.witness.budget, 3);
        let orient: Vec<EdgeDecision> =
            [(0, 1), (1, 2), (2, 0)].iter().map(|&(tail, head)| EdgeDecision::Orient { tail, head }).collect();
        let f = red.lift_forward(&orient).unwrap();
        assert_eq!(red.lift_back(&f), orient);
    }

    #[test]
    fn zero_requirement_rejected() {
        let mut r = Requirement::uniform(3, 1);
        r.set(0, 1, 0);
        assert!(reduce_lco_to_lcdo(&triangle(), &r).is_err());
    }
}

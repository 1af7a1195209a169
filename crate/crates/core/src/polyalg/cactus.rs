//! Quotient by the "λ ≥ 3" relation and the spanning-tree algorithm for
//! weighted doubling to 3-edge-connectivity.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::UnionFind;
use crate::connectivity::{is_k_edge_connected, local_edge_connectivity};
use crate::error::{Error, Result};
use crate::exact::{SolveResult, Status};
use crate::graph::{MixedGraph, VertexId};
use crate::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CactusQuotient {
    pub quotient: MixedGraph,
    /// Class of every source vertex; classes are numbered by smallest member.
    pub class_of: Vec<usize>,
    /// Source edge of every quotient edge.
    pub edge_origin: Vec<usize>,
}

/// Contracts the classes of `u ~ v ⇔ λ(u,v) ≥ 3`. Edges inside a class
/// disappear; the rest keep their order.
pub fn cactus_quotient(g: &MixedGraph) -> Result<CactusQuotient> {
    if !g.is_graph() {
        return Err(Error::Precondition("expected an undirected graph".into()));
    }
    let n = g.n();
    let mut uf = UnionFind::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if uf.find(u) != uf.find(v) && local_edge_connectivity(g, u, v)? >= 3 {
                uf.union(u, v);
            }
        }
    }
    let mut class_id = vec![usize::MAX; n];
    let mut class_of = vec![0; n];
    let mut classes = 0;
    for v in 0..n {
        let r = uf.find(v);
        if class_id[r] == usize::MAX {
            class_id[r] = classes;
            classes += 1;
        }
        class_of[v] = class_id[r];
    }
    let mut quotient = MixedGraph::new(classes);
    let mut edge_origin = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (class_of[e.u], class_of[e.v]);
        if a != b {
            quotient.add_edge_labeled(a, b, e.label.clone())?;
            edge_origin.push(i);
        }
    }
    Ok(CactusQuotient { quotient, class_of, edge_origin })
}

/// Every pair of distinct vertices has local edge connectivity exactly 2.
pub fn is_cactus(g: &MixedGraph) -> bool {
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| local_edge_connectivity(g, u, v).ok() == Some(2)))
}

/// Whether some vertex has degree exactly 2.
pub fn has_degree_two_vertex(g: &MixedGraph) -> bool {
    (0..g.n()).any(|v| g.total_degree(v) == 2)
}

/// Minimum-weight set of edges of the 2-edge-connected graph `g` whose
/// doubling makes it 3-edge-connected: a minimum spanning tree of the cactus
/// quotient (Kruskal, ties by source edge index), lifted to source edges.
pub fn w23eda(g: &MixedGraph, weights: &[Weight]) -> Result<SolveResult<Vec<usize>>> {
    if weights.len() != g.num_edges() {
        return Err(Error::Precondition("one weight per edge required".into()));
    }
    if weights.iter().any(|w| *w < Weight::zero()) {
        return Err(Error::Precondition("weights must be non-negative".into()));
    }
    if !g.is_graph() {
        return Err(Error::Precondition("expected an undirected graph".into()));
    }
    if !is_k_edge_connected(g, 2) {
        return Ok(SolveResult {
            status: Status::Infeasible,
            optimum: None,
            witness: None,
            nodes_explored: 0,
        });
    }
    let cq = cactus_quotient(g)?;
    let mut order: Vec<usize> = (0..cq.quotient.num_edges()).collect();
    order.sort_by(|&a, &b| {
        let (oa, ob) = (cq.edge_origin[a], cq.edge_origin[b]);
        weights[oa].cmp(&weights[ob]).then(oa.cmp(&ob))
    });
    let mut uf = UnionFind::new(cq.quotient.n());
    let mut chosen = Vec::new();
    let mut total = Weight::zero();
    for q in order {
        let e = &cq.quotient.edges()[q];
        if uf.union(e.u, e.v) {
            let src = cq.edge_origin[q];
            chosen.push(src);
            total += weights[src];
        }
    }
    chosen.sort_unstable();
    Ok(SolveResult {
        status: Status::Optimal,
        optimum: Some(total),
        witness: Some(chosen),
        nodes_explored: 0,
    })
}

/// Vertices of each class, by class id.
pub fn classes(cq: &CactusQuotient) -> Vec<Vec<VertexId>> {
    let mut out = vec![Vec::new(); cq.quotient.n()];
    for (v, &c) in cq.class_of.iter().enumerate() {
        out[c].push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_k_edge_connected;

    fn w(x: i64) -> Weight {
        Weight::from_integer(x)
    }

    #[test]
    fn five_cycle() {
        let c5 = MixedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let cq = cactus_quotient(&c5).unwrap();
        assert!(is_cactus(&cq.quotient));
        assert!(has_degree_two_vertex(&cq.quotient));
        let r = w23eda(&c5, &[w(1); 5]).unwrap();
        assert_eq!(r.optimum, Some(w(4)));
        assert_eq!(r.witness, Some(vec![0, 1, 2, 3]));
        assert!(is_k_edge_connected(&c5.double_edges(&[0, 1, 2, 3]).unwrap(), 3));
    }

    #[test]
    fn three_connected_graph_has_trivial_quotient() {
        let mut e = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                e.push((a, b));
            }
        }
        let k4 = MixedGraph::from_edges(4, &e).unwrap();
        let cq = cactus_quotient(&k4).unwrap();
        assert_eq!(cq.quotient.n(), 1);
        assert_eq!(w23eda(&k4, &[w(1); 6]).unwrap().optimum, Some(w(0)));
    }

    #[test]
    fn weighted_triangle() {
        let c3 = MixedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = w23eda(&c3, &[w(1), w(2), w(3)]).unwrap();
        assert_eq!(r.optimum, Some(w(3)));
        assert_eq!(r.witness, Some(vec![0, 1]));
    }

    #[test]
    fn bridge_is_infeasible() {
        let p = MixedGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(w23eda(&p, &[w(1)]).unwrap().status, Status::Infeasible);
    }
}

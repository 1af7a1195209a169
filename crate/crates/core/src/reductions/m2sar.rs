//! From independent 2-strong orientation of mixed graphs to minimum
//! reversal towards a 2-strong digraph.
//!
//! Every non-terminal vertex `v` becomes a complete digraph on one port per
//! incident element; every edge becomes an arc between the two ports; every
//! arc `a` becomes a rocket of size `|E(M)|` anchored at its chosen
//! non-terminal end `v_a`, with tip pointing along `a`.

use serde::{Deserialize, Serialize};

use super::rocket::{embed_rocket, Rocket, RocketKind};
use super::ReductionWitness;
use crate::error::{Error, Result};
use crate::graph::{EdgeDecision, MixedGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct M2sarReduction {
    pub witness: ReductionWitness,
    /// Per edge `e = uv` of M: the arc `x^{u,e} → x^{v,e}`.
    pub link_arcs: Vec<usize>,
    /// Per arc of M: its anchor `v_a` and rocket.
    pub anchors: Vec<VertexId>,
    pub rockets: Vec<Rocket>,
    /// Source edges `(u, v)`, as stored.
    source_edges: Vec<(VertexId, VertexId)>,
}

/// Whether `t` is independent in the underlying graph of `m`.
pub fn is_independent(m: &MixedGraph, t: &[VertexId]) -> bool {
    let mut in_t = vec![false; m.n()];
    for &v in t {
        if v < m.n() {
            in_t[v] = true;
        }
    }
    let ends = m.edges().iter().map(|e| (e.u, e.v)).chain(m.arcs().iter().map(|a| (a.tail, a.head)));
    t.iter().all(|&v| v < m.n()) && ends.into_iter().all(|(a, b)| !(in_t[a] && in_t[b]))
}

pub fn reduce_i2vcomg_to_m2sar(m: &MixedGraph, t: &[VertexId]) -> Result<M2sarReduction> {
    if let Some(&v) = t.iter().find(|&&v| v >= m.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: m.n() });
    }
    if !is_independent(m, t) {
        return Err(Error::Precondition("terminal set is not independent".into()));
    }
    let n = m.n();
    let mut in_t = vec![false; n];
    for &v in t {
        in_t[v] = true;
    }
    let anchors: Vec<VertexId> = m
        .arcs()
        .iter()
        .map(|a| if !in_t[a.tail] { a.tail } else { a.head })
        .collect();
    let mut d = MixedGraph::new(0);
    let mut labels = Vec::new();
    let mut new_vertex = |d: &mut MixedGraph, label: String| {
        labels.push(label);
        d.add_vertex()
    };
    // port[v][e] for edges, arc_port[v][a] for single ports, triple ports for anchors
    let mut edge_port = vec![[0usize; 2]; m.num_edges()];
    let mut arc_port = vec![[usize::MAX; 2]; m.num_arcs()];
    let mut arc_triple = vec![[0usize; 3]; m.num_arcs()];
    let mut cliques: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..n {
        if in_t[v] {
            let id = new_vertex(&mut d, format!("t{v}"));
            for (i, e) in m.edges().iter().enumerate() {
                if e.u == v {
                    edge_port[i][0] = id;
                } else if e.v == v {
                    edge_port[i][1] = id;
                }
            }
            for (i, a) in m.arcs().iter().enumerate() {
                if a.tail == v {
                    arc_port[i][0] = id;
                } else if a.head == v {
                    arc_port[i][1] = id;
                }
            }
            continue;
        }
        let mut clique = Vec::new();
        for (i, e) in m.edges().iter().enumerate() {
            if e.u == v || e.v == v {
                let id = new_vertex(&mut d, format!("x^{{{v},e{i}}}"));
                edge_port[i][usize::from(e.u != v)] = id;
                clique.push(id);
            }
        }
        for (i, a) in m.arcs().iter().enumerate() {
            if a.tail != v && a.head != v {
                continue;
            }
            if anchors[i] == v {
                for (j, name) in ["x_0", "y_0", "z_0"].iter().enumerate() {
                    let id = new_vertex(&mut d, format!("{name}^{{{v},a{i}}}"));
                    arc_triple[i][j] = id;
                    clique.push(id);
                }
            } else {
                let id = new_vertex(&mut d, format!("x^{{{v},a{i}}}"));
                arc_port[i][usize::from(a.tail != v)] = id;
                clique.push(id);
            }
        }
        cliques.push(clique);
    }
    for clique in &cliques {
        for &a in clique {
            for &b in clique {
                if a != b {
                    d.add_arc_labeled(a, b, Some("biclique".into()))?;
                }
            }
        }
    }
    let mut link_arcs = Vec::with_capacity(m.num_edges());
    for (i, ports) in edge_port.iter().enumerate() {
        link_arcs.push(d.add_arc_labeled(ports[0], ports[1], Some(format!("link e{i}")))?);
    }
    let k = m.num_edges();
    let mut rockets = Vec::with_capacity(m.num_arcs());
    for (i, a) in m.arcs().iter().enumerate() {
        let [x0, y0, z0] = arc_triple[i];
        let before = d.n();
        let r = if anchors[i] == a.tail {
            embed_rocket(&mut d, RocketKind::Out, k, [x0, y0, z0, arc_port[i][1]], &format!("R_a{i}"))?
        } else {
            embed_rocket(&mut d, RocketKind::In, k, [x0, y0, z0, arc_port[i][0]], &format!("R_a{i}"))?
        };
        for v in before..d.n() {
            labels.push(format!("R_a{i}:interior{}", v - before));
        }
        rockets.push(r);
    }
    let witness = ReductionWitness { graph: d, budget: k, vertex_labels: labels };
    Ok(M2sarReduction {
        witness,
        link_arcs,
        anchors,
        rockets,
        source_edges: m.edges().iter().map(|e| (e.u, e.v)).collect(),
    })
}

impl M2sarReduction {
    /// Reversal set realizing an orientation of the source edges: link arcs
    /// disagreeing with the orientation are reversed.
    pub fn lift_forward(&self, orientation: &[EdgeDecision]) -> Result<Vec<usize>> {
        if orientation.len() != self.link_arcs.len() {
            return Err(Error::Precondition("one decision per source edge required".into()));
        }
        let mut out = Vec::new();
        for (i, dec) in orientation.iter().enumerate() {
            let (u, v) = self.source_edges[i];
            match *dec {
                EdgeDecision::Orient { tail, head } if (tail, head) == (u, v) => {}
                EdgeDecision::Orient { tail, head } if (tail, head) == (v, u) => out.push(self.link_arcs[i]),
                _ => return Err(Error::Precondition(format!("edge {i} is not oriented along itself"))),
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Orientation of the source edges read off the link arcs after
    /// reversing `reversed`.
    pub fn lift_back(&self, reversed: &[usize]) -> Vec<EdgeDecision> {
        self.link_arcs
            .iter()
            .zip(&self.source_edges)
            .map(|(a, &(u, v))| {
                if reversed.contains(a) {
                    EdgeDecision::Orient { tail: v, head: u }
                } else {
                    EdgeDecision::Orient { tail: u, head: v }
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::rocket::host_contains;

    #[test]
    fn arcless_instance_has_no_rockets() {
        let m = MixedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = reduce_i2vcomg_to_m2sar(&m, &[0]).unwrap();
        assert!(r.rockets.is_empty());
        // t0 plus two ports for each of vertices 1 and 2
        assert_eq!(r.witness.graph.n(), 5);
        assert_eq!(r.witness.graph.num_arcs(), 2 + 2 + 3);
        assert_eq!(r.witness.budget, 3);
    }

    #[test]
    fn single_arc_gets_out_rocket() {
        let mut m = MixedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        m.add_arc(0, 2).unwrap();
        let r = reduce_i2vcomg_to_m2sar(&m, &[2]).unwrap();
        assert_eq!(r.anchors, vec![0]);
        let rocket = &r.rockets[0];
        assert_eq!(rocket.kind, RocketKind::Out);
        assert_eq!(rocket.k, 2);
        let d = &r.witness.graph;
        assert!(host_contains(d, rocket));
        // tip enters the terminal itself
        assert_eq!(r.witness.vertex_labels[d.arcs()[rocket.tip].head], "t2");
    }

    #[test]
    fn rejects_adjacent_terminals() {
        let m = MixedGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(reduce_i2vcomg_to_m2sar(&m, &[0, 1]).is_err());
    }

    #[test]
    fn lifts_are_inverse() {
        let m = MixedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = reduce_i2vcomg_to_m2sar(&m, &[]).unwrap();
        let o = vec![
            EdgeDecision::Orient { tail: 1, head: 0 },
            EdgeDecision::Orient { tail: 1, head: 2 },
            EdgeDecision::Orient { tail: 2, head: 0 },
        ];
        let f = r.lift_forward(&o).unwrap();
        assert_eq!(f, vec![r.link_arcs[0]]);
        assert_eq!(r.lift_back(&f), o);
    }
}

//! From vertex cover on twice-subdivided cubic graphs to doubling edges
//! towards 4-edge-connectivity.

use serde::{Deserialize, Serialize};

use super::ReductionWitness;
use crate::connectivity::is_k_edge_connected;
use crate::error::{Error, Result};
use crate::graph::{ElementRef, MixedGraph, VertexId};

fn require_simple_graph(g: &MixedGraph) -> Result<()> {
    if !g.is_graph() {
        return Err(Error::Precondition("expected an undirected graph".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for e in g.edges() {
        if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
            return Err(Error::Precondition("parallel edges are not allowed".into()));
        }
    }
    Ok(())
}

fn is_two_vertex_connected(g: &MixedGraph) -> bool {
    g.n() >= 3
        && g.is_connected()
        && (0..g.n()).all(|v| g.delete_vertices(&[v]).map(|(h, _)| h.is_connected()).unwrap_or(false))
}

/// Subdivides every edge of a simple cubic 2-vertex-connected graph twice.
/// Edge `i = ab` becomes `a s, s s', s' b` with `s = n + 2i`, `s' = n + 2i + 1`.
pub fn class_g_instance(cubic: &MixedGraph) -> Result<MixedGraph> {
    require_simple_graph(cubic)?;
    if (0..cubic.n()).any(|v| cubic.total_degree(v) != 3) {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    if !is_two_vertex_connected(cubic) {
        return Err(Error::Precondition("graph is not 2-vertex-connected".into()));
    }
    Ok(cubic.subdivide_all(2))
}

/// Recovers the cubic graph whose double subdivision is `g`, if any.
pub fn class_g_source(g: &MixedGraph) -> Option<MixedGraph> {
    if !g.is_graph() {
        return None;
    }
    let deg: Vec<usize> = (0..g.n()).map(|v| g.total_degree(v)).collect();
    if deg.iter().any(|&d| d != 2 && d != 3) {
        return None;
    }
    let branch: Vec<VertexId> = (0..g.n()).filter(|&v| deg[v] == 3).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in branch.iter().enumerate() {
        index[v] = i;
    }
    let adj = g.undirected_adjacency();
    let mut used = vec![false; g.num_edges()];
    let mut cubic = MixedGraph::new(branch.len());
    let mut inner_seen = 0;
    for &b in &branch {
        for &(next, er) in &adj[b] {
            let ElementRef::Edge(e0) = er else { return None };
            if used[e0] {
                continue;
            }
            used[e0] = true;
            let (mut via, mut cur, mut inner) = (e0, next, 0);
            while deg[cur] == 2 {
                inner += 1;
                if inner > 2 {
                    return None;
                }
                let &(nx, er2) = adj[cur].iter().find(|&&(_, er2)| er2 != ElementRef::Edge(via))?;
                let ElementRef::Edge(i) = er2 else { return None };
                if used[i] {
                    return None;
                }
                used[i] = true;
                via = i;
                cur = nx;
            }
            if inner != 2 || cur == b {
                return None;
            }
            inner_seen += 2;
            cubic.add_edge(index[b], index[cur]).ok()?;
        }
    }
    if inner_seen + branch.len() != g.n() || used.iter().any(|u| !u) {
        return None;
    }
    Some(cubic)
}

/// Whether `g` is a double subdivision of a simple cubic 2-vertex-connected graph.
pub fn is_class_g(g: &MixedGraph) -> bool {
    class_g_source(g).is_some_and(|c| require_simple_graph(&c).is_ok() && is_two_vertex_connected(&c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnePath {
    pub edge: usize,
    /// Ends as stored in the edge.
    pub ends: [VertexId; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPath {
    pub edges: [usize; 2],
    /// `u, v, w` with middle vertex `v`.
    pub verts: [VertexId; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegalDecomposition {
    pub one: Vec<OnePath>,
    pub two: Vec<TwoPath>,
}

/// At every branch vertex the two lowest-index incident edges form a 2-path
/// (the lower edge leads to `u`); all other edges are 1-paths.
pub fn legal_decomposition(g: &MixedGraph) -> Result<LegalDecomposition> {
    if !is_class_g(g) {
        return Err(Error::Precondition("graph is not a double subdivision of a 2-connected cubic graph".into()));
    }
    let mut in_two = vec![false; g.num_edges()];
    let mut two = Vec::new();
    for v in 0..g.n() {
        if g.total_degree(v) != 3 {
            continue;
        }
        let inc: Vec<usize> = (0..g.num_edges()).filter(|&i| g.edges()[i].u == v || g.edges()[i].v == v).collect();
        let (e1, e2) = (inc[0], inc[1]);
        in_two[e1] = true;
        in_two[e2] = true;
        two.push(TwoPath { edges: [e1, e2], verts: [g.edges()[e1].other(v), v, g.edges()[e2].other(v)] });
    }
    let one = (0..g.num_edges())
        .filter(|&i| !in_two[i])
        .map(|i| OnePath { edge: i, ends: [g.edges()[i].u, g.edges()[i].v] })
        .collect();
    Ok(LegalDecomposition { one, two })
}

/// Checks the three legality conditions.
pub fn is_legal(g: &MixedGraph, dec: &LegalDecomposition) -> bool {
    let mut count = vec![0usize; g.num_edges()];
    let mut on = vec![0usize; g.n()];
    for p in &dec.one {
        let Some(e) = g.edges().get(p.edge) else { return false };
        if !e.joins(p.ends[0], p.ends[1]) {
            return false;
        }
        count[p.edge] += 1;
        on[p.ends[0]] += 1;
        on[p.ends[1]] += 1;
    }
    for p in &dec.two {
        let [u, v, w] = p.verts;
        let (Some(a), Some(b)) = (g.edges().get(p.edges[0]), g.edges().get(p.edges[1])) else { return false };
        if u == w || !a.joins(u, v) || !b.joins(v, w) || p.edges[0] == p.edges[1] {
            return false;
        }
        count[p.edges[0]] += 1;
        count[p.edges[1]] += 1;
        for x in p.verts {
            on[x] += 1;
        }
    }
    count.iter().all(|&c| c == 1) && on.iter().all(|&c| c == 2)
}

/// Vertices of one path gadget: the three ports and `x¹..x⁸`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathGadget {
    pub u: VertexId,
    pub v: VertexId,
    pub w: VertexId,
    /// `x¹..x⁸`.
    pub inner: [VertexId; 8],
    /// Host indices of the 17 gadget edges in construction order.
    pub edges: [usize; 17],
}

impl PathGadget {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut v = vec![self.u, self.v, self.w];
        v.extend(self.inner);
        v
    }

    fn edge_between(&self, h: &MixedGraph, a: VertexId, b: VertexId) -> usize {
        *self.edges.iter().find(|&&i| h.edges()[i].joins(a, b)).expect("gadget edge")
    }

    /// The four gadget edges doubled when the middle vertex is in the cover:
    /// `x¹x², x³x⁴, x⁵x⁶, x^w x⁷`.
    pub fn middle_in_cover(&self, h: &MixedGraph) -> [usize; 4] {
        let x = &self.inner;
        [
            self.edge_between(h, x[0], x[1]),
            self.edge_between(h, x[2], x[3]),
            self.edge_between(h, x[4], x[5]),
            self.edge_between(h, self.w, x[6]),
        ]
    }

    /// `x^v x¹, x²x³, x⁴x⁵, x⁶x⁷`.
    pub fn middle_not_in_cover(&self, h: &MixedGraph) -> [usize; 4] {
        let x = &self.inner;
        [
            self.edge_between(h, self.v, x[0]),
            self.edge_between(h, x[1], x[2]),
            self.edge_between(h, x[3], x[4]),
            self.edge_between(h, x[5], x[6]),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vc4edaReduction {
    pub witness: ReductionWitness,
    pub decomposition: LegalDecomposition,
    /// Vertex of each 1-path.
    pub one_vertex: Vec<VertexId>,
    pub gadgets: Vec<PathGadget>,
    pub hub: VertexId,
    /// Edge from the hub to each 1-path vertex.
    pub hub_edges: Vec<usize>,
    /// The linking edge `e_v` of every vertex of the source graph.
    pub link: Vec<usize>,
    source: MixedGraph,
}

pub fn reduce_vc_to_4eda(g: &MixedGraph, k: usize) -> Result<Vc4edaReduction> {
    let dec = legal_decomposition(g)?;
    if g.n() < 5 {
        return Err(Error::Precondition("at least five vertices required".into()));
    }
    let mut h = MixedGraph::new(0);
    let mut labels = Vec::new();
    let mut one_vertex = Vec::new();
    for i in 0..dec.one.len() {
        one_vertex.push(h.add_vertex());
        labels.push(format!("x_P{i}"));
    }
    const PAIRS: [(usize, usize); 17] = [
        (0, 4), (0, 5), (0, 6), (0, 7), // u2 u3 u4 u5
        (1, 3), (1, 10), // v1 v8
        (2, 9), (2, 10), // w7 w8
        (3, 4), (3, 10), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (8, 10), (9, 10),
    ];
    const NAMES: [&str; 11] = ["u", "v", "w", "1", "2", "3", "4", "5", "6", "7", "8"];
    let mut gadgets = Vec::new();
    for j in 0..dec.two.len() {
        let first = h.add_vertices(11);
        for name in NAMES {
            labels.push(format!("x_Q{j}^{name}"));
        }
        let mut edges = [0usize; 17];
        for (slot, &(a, b)) in PAIRS.iter().enumerate() {
            edges[slot] = h.add_edge_labeled(
                first + a,
                first + b,
                Some(format!("x_Q{j}^{} x_Q{j}^{}", NAMES[a], NAMES[b])),
            )?;
        }
        let mut inner = [0; 8];
        for (i, slot) in inner.iter_mut().enumerate() {
            *slot = first + 3 + i;
        }
        gadgets.push(PathGadget { u: first, v: first + 1, w: first + 2, inner, edges });
    }
    let hub = h.add_vertex();
    labels.push("y".into());
    let mut hub_edges = Vec::new();
    for (i, &x) in one_vertex.iter().enumerate() {
        hub_edges.push(h.add_edge_labeled(hub, x, Some(format!("y x_P{i}")))?);
    }
    // the two paths through each source vertex, as host ports
    let mut ports: Vec<Vec<VertexId>> = vec![Vec::new(); g.n()];
    for (i, p) in dec.one.iter().enumerate() {
        for &v in &p.ends {
            ports[v].push(one_vertex[i]);
        }
    }
    for (j, p) in dec.two.iter().enumerate() {
        let gd = &gadgets[j];
        for (role, &v) in p.verts.iter().enumerate() {
            ports[v].push([gd.u, gd.v, gd.w][role]);
        }
    }
    let mut link = Vec::with_capacity(g.n());
    for (v, pv) in ports.iter().enumerate() {
        if pv.len() != 2 {
            return Err(Error::Precondition(format!("vertex {v} lies on {} paths", pv.len())));
        }
        link.push(h.add_edge_labeled(pv[0], pv[1], Some(format!("e_{v}")))?);
    }
    let witness = ReductionWitness { graph: h, budget: k + g.n(), vertex_labels: labels };
    Ok(Vc4edaReduction {
        witness,
        decomposition: dec,
        one_vertex,
        gadgets,
        hub,
        hub_edges,
        link,
        source: g.clone(),
    })
}

fn canonical(side: Vec<bool>) -> Vec<bool> {
    if side[0] {
        side
    } else {
        side.into_iter().map(|b| !b).collect()
    }
}

impl Vc4edaReduction {
    /// The four families of 3-edge-cuts predicted for the host: each 1-path
    /// vertex, each gadget, each gadget vertex except `x^u` and `x⁸`, and
    /// `{x^u, x², x³, x⁴, x⁵}` of each gadget. Sides are complemented to
    /// contain vertex 0 and sorted.
    pub fn predicted_three_cuts(&self) -> Vec<Vec<bool>> {
        let n = self.witness.graph.n();
        let set = |vs: &[VertexId]| {
            let mut s = vec![false; n];
            for &v in vs {
                s[v] = true;
            }
            canonical(s)
        };
        let mut out = Vec::new();
        for &x in &self.one_vertex {
            out.push(set(&[x]));
        }
        for gd in &self.gadgets {
            out.push(set(&gd.vertices()));
            out.push(set(&[gd.v]));
            out.push(set(&[gd.w]));
            for i in 0..7 {
                out.push(set(&[gd.inner[i]]));
            }
            out.push(set(&[gd.u, gd.inner[1], gd.inner[2], gd.inner[3], gd.inner[4]]));
        }
        out.sort();
        out.dedup();
        out
    }

    /// Doubling set for a vertex cover of the source graph.
    pub fn lift_forward(&self, cover: &[VertexId]) -> Result<Vec<usize>> {
        let g = &self.source;
        let mut in_s = vec![false; g.n()];
        for &v in cover {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
            in_s[v] = true;
        }
        if g.edges().iter().any(|e| !in_s[e.u] && !in_s[e.v]) {
            return Err(Error::Precondition("not a vertex cover".into()));
        }
        let h = &self.witness.graph;
        let mut f: Vec<usize> = (0..g.n()).filter(|&v| in_s[v]).map(|v| self.link[v]).collect();
        for (p, gd) in self.decomposition.two.iter().zip(&self.gadgets) {
            if in_s[p.verts[1]] {
                f.extend(gd.middle_in_cover(h));
            } else {
                f.extend(gd.middle_not_in_cover(h));
            }
        }
        f.sort_unstable();
        Ok(f)
    }

    /// Vertex cover of size at most `|F| − |V(G)|` from a feasible doubling
    /// set, after exchanging doubled edges so that every path is covered by
    /// the linking edges of its vertices.
    pub fn lift_back(&self, doubled: &[usize]) -> Result<Vec<VertexId>> {
        let h = &self.witness.graph;
        if !is_k_edge_connected(&h.double_edges(doubled)?, 4) {
            return Err(Error::Precondition("doubling set does not give 4-edge-connectivity".into()));
        }
        let mut f = vec![false; h.num_edges()];
        for &i in doubled {
            f[i] = true;
        }
        for (i, p) in self.decomposition.one.iter().enumerate() {
            let [a, b] = p.ends;
            if !f[self.link[a]] && !f[self.link[b]] {
                f[self.hub_edges[i]] = false;
                f[self.link[a]] = true;
            }
        }
        for (p, gd) in self.decomposition.two.iter().zip(&self.gadgets) {
            let [u, v, w] = p.verts;
            let (eu, ev, ew) = (f[self.link[u]], f[self.link[v]], f[self.link[w]]);
            let inside = gd.edges.iter().filter(|&&i| f[i]).count();
            if (ev || (eu && ew)) && inside >= 4 {
                continue;
            }
            for &i in &gd.edges {
                f[i] = false;
            }
            if ew {
                f[self.link[u]] = true;
                for i in gd.middle_not_in_cover(h) {
                    f[i] = true;
                }
            } else {
                // only e_u (or nothing, impossible for a feasible set)
                f[self.link[v]] = true;
                for i in gd.middle_in_cover(h) {
                    f[i] = true;
                }
            }
        }
        let cover: Vec<VertexId> = (0..self.source.n()).filter(|&v| f[self.link[v]]).collect();
        debug_assert!(self.source.edges().iter().all(|e| cover.contains(&e.u) || cover.contains(&e.v)));
        Ok(cover)
    }
}

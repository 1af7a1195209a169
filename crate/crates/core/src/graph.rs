//! Mixed multigraphs: a vertex count plus index-addressed multisets of
//! undirected edges and arcs. Graphs and digraphs are the special cases with
//! no arcs or no edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn joins(&self, a: VertexId, b: VertexId) -> bool {
        (self.u == a && self.v == b) || (self.u == b && self.v == a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Reference to one element of a mixed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementRef {
    Edge(usize),
    Arc(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct MixedGraph {
    n: usize,
    edges: Vec<Edge>,
    arcs: Vec<Arc>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    #[serde(default)]
    edges: Vec<Edge>,
    #[serde(default)]
    arcs: Vec<Arc>,
}

impl TryFrom<RawGraph> for MixedGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        let mut g = MixedGraph::new(raw.n);
        for e in raw.edges {
            g.add_edge_labeled(e.u, e.v, e.label)?;
        }
        for a in raw.arcs {
            g.add_arc_labeled(a.tail, a.head, a.label)?;
        }
        Ok(g)
    }
}

impl From<MixedGraph> for RawGraph {
    fn from(g: MixedGraph) -> Self {
        RawGraph {
            n: g.n,
            edges: g.edges,
            arcs: g.arcs,
        }
    }
}

impl MixedGraph {
    pub fn new(n: usize) -> Self {
        MixedGraph {
            n,
            edges: Vec::new(),
            arcs: Vec::new(),
        }
    }

    /// Builds an undirected multigraph from endpoint pairs.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = MixedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a directed multigraph from (tail, head) pairs.
    pub fn from_arcs(n: usize, arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = MixedGraph::new(n);
        for &(t, h) in arcs {
            g.add_arc(t, h)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_digraph(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_graph(&self) -> bool {
        self.arcs.is_empty()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, a: VertexId, b: VertexId) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::Loop(a));
        }
        Ok(())
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        self.n - 1
    }

    /// Adds `count` vertices and returns the first new id.
    pub fn add_vertices(&mut self, count: usize) -> VertexId {
        let first = self.n;
        self.n += count;
        first
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<usize> {
        self.add_edge_labeled(u, v, None)
    }

    pub fn add_edge_labeled(
        &mut self,
        u: VertexId,
        v: VertexId,
        label: Option<String>,
    ) -> Result<usize> {
        self.check_pair(u, v)?;
        self.edges.push(Edge { u, v, label });
        Ok(self.edges.len() - 1)
    }

    pub fn add_arc(&mut self, tail: VertexId, head: VertexId) -> Result<usize> {
        self.add_arc_labeled(tail, head, None)
    }

    pub fn add_arc_labeled(
        &mut self,
        tail: VertexId,
        head: VertexId,
        label: Option<String>,
    ) -> Result<usize> {
        self.check_pair(tail, head)?;
        self.arcs.push(Arc { tail, head, label });
        Ok(self.arcs.len() - 1)
    }

    pub fn set_edge_label(&mut self, i: usize, label: impl Into<String>) -> Result<()> {
        let len = self.edges.len();
        let e = self.edges.get_mut(i).ok_or(Error::ElementOutOfRange {
            kind: "edge",
            index: i,
            len,
        })?;
        e.label = Some(label.into());
        Ok(())
    }

    pub fn set_arc_label(&mut self, i: usize, label: impl Into<String>) -> Result<()> {
        let len = self.arcs.len();
        let a = self.arcs.get_mut(i).ok_or(Error::ElementOutOfRange {
            kind: "arc",
            index: i,
            len,
        })?;
        a.label = Some(label.into());
        Ok(())
    }

    fn check_arc_indices(&self, f: &[usize]) -> Result<Vec<bool>> {
        let mut mark = vec![false; self.arcs.len()];
        for &i in f {
            if i >= self.arcs.len() {
                return Err(Error::ElementOutOfRange {
                    kind: "arc",
                    index: i,
                    len: self.arcs.len(),
                });
            }
            if mark[i] {
                return Err(Error::Precondition(format!("arc {i} listed twice")));
            }
            mark[i] = true;
        }
        Ok(mark)
    }

    fn check_edge_indices(&self, f: &[usize]) -> Result<()> {
        for &i in f {
            if i >= self.edges.len() {
                return Err(Error::ElementOutOfRange {
                    kind: "edge",
                    index: i,
                    len: self.edges.len(),
                });
            }
        }
        Ok(())
    }

    /// Deletes the given vertices and every element touching them. Returns the
    /// new graph and the old-to-new vertex map.
    pub fn delete_vertices(&self, s: &[VertexId]) -> Result<(MixedGraph, Vec<Option<VertexId>>)> {
        let mut gone = vec![false; self.n];
        for &v in s {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !gone[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut g = MixedGraph::new(next);
        for e in &self.edges {
            if let (Some(u), Some(v)) = (map[e.u], map[e.v]) {
                g.edges.push(Edge { u, v, label: e.label.clone() });
            }
        }
        for a in &self.arcs {
            if let (Some(t), Some(h)) = (map[a.tail], map[a.head]) {
                g.arcs.push(Arc { tail: t, head: h, label: a.label.clone() });
            }
        }
        Ok((g, map))
    }

    /// Swaps head and tail of the listed arcs. Arc indices are preserved.
    pub fn reverse_arcs(&self, f: &[usize]) -> Result<MixedGraph> {
        let mark = self.check_arc_indices(f)?;
        let mut g = self.clone();
        for (i, a) in g.arcs.iter_mut().enumerate() {
            if mark[i] {
                std::mem::swap(&mut a.tail, &mut a.head);
            }
        }
        Ok(g)
    }

    /// Replaces the listed arcs by undirected edges. Remaining arcs keep their
    /// relative order; the new edges are appended in the order of `f`.
    pub fn deorient_arcs(&self, f: &[usize]) -> Result<MixedGraph> {
        let mark = self.check_arc_indices(f)?;
        let mut g = MixedGraph::new(self.n);
        g.edges = self.edges.clone();
        for &i in f {
            let a = &self.arcs[i];
            g.edges.push(Edge { u: a.tail, v: a.head, label: a.label.clone() });
        }
        g.arcs = self
            .arcs
            .iter()
            .enumerate()
            .filter(|(i, _)| !mark[*i])
            .map(|(_, a)| a.clone())
            .collect();
        Ok(g)
    }

    /// Adds a reversed copy of each listed arc.
    pub fn add_opposite_arcs(&self, f: &[usize]) -> Result<MixedGraph> {
        self.check_arc_indices(f)?;
        let mut g = self.clone();
        for &i in f {
            let a = &self.arcs[i];
            g.arcs.push(Arc { tail: a.head, head: a.tail, label: a.label.clone() });
        }
        Ok(g)
    }

    /// Greedily pairs opposite arcs (in index order) and replaces each pair by
    /// an undirected edge, until no digon remains.
    pub fn digon_to_edge(&self) -> MixedGraph {
        let m = self.arcs.len();
        let mut used = vec![false; m];
        let mut g = MixedGraph::new(self.n);
        g.edges = self.edges.clone();
        for i in 0..m {
            if used[i] {
                continue;
            }
            let a = &self.arcs[i];
            let partner = (i + 1..m).find(|&j| {
                !used[j] && self.arcs[j].tail == a.head && self.arcs[j].head == a.tail
            });
            if let Some(j) = partner {
                used[i] = true;
                used[j] = true;
                g.edges.push(Edge { u: a.tail, v: a.head, label: a.label.clone() });
            }
        }
        g.arcs = self
            .arcs
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(_, a)| a.clone())
            .collect();
        g
    }

    /// Replaces every edge by two opposite arcs (`u→v` then `v→u`).
    pub fn edge_to_digon(&self) -> MixedGraph {
        let mut g = MixedGraph::new(self.n);
        g.arcs = self.arcs.clone();
        for e in &self.edges {
            g.arcs.push(Arc { tail: e.u, head: e.v, label: e.label.clone() });
            g.arcs.push(Arc { tail: e.v, head: e.u, label: e.label.clone() });
        }
        g
    }

    /// Adds one parallel copy of each listed edge (repeats add repeated copies).
    pub fn double_edges(&self, f: &[usize]) -> Result<MixedGraph> {
        self.check_edge_indices(f)?;
        let mut g = self.clone();
        for &i in f {
            g.edges.push(self.edges[i].clone());
        }
        Ok(g)
    }

    /// Forgets all arc directions.
    pub fn underlying_graph(&self) -> MixedGraph {
        let mut g = MixedGraph::new(self.n);
        g.edges = self.edges.clone();
        for a in &self.arcs {
            g.edges.push(Edge { u: a.tail, v: a.head, label: a.label.clone() });
        }
        g
    }

    /// Merges the vertex set `x` into a single vertex, deleting elements that
    /// become loops. The merged vertex takes the position of the smallest
    /// member of `x`; returns the old-to-new map.
    pub fn contract(&self, x: &[VertexId]) -> Result<(MixedGraph, Vec<VertexId>)> {
        if x.is_empty() {
            return Err(Error::Precondition("cannot contract an empty set".into()));
        }
        let mut inside = vec![false; self.n];
        for &v in x {
            self.check_vertex(v)?;
            inside[v] = true;
        }
        let rep = *x.iter().min().unwrap();
        let mut map = vec![0; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if inside[v] && v != rep {
                continue;
            }
            map[v] = next;
            next += 1;
        }
        for v in 0..self.n {
            if inside[v] {
                map[v] = map[rep];
            }
        }
        let mut g = MixedGraph::new(next);
        for e in &self.edges {
            let (u, v) = (map[e.u], map[e.v]);
            if u != v {
                g.edges.push(Edge { u, v, label: e.label.clone() });
            }
        }
        for a in &self.arcs {
            let (t, h) = (map[a.tail], map[a.head]);
            if t != h {
                g.arcs.push(Arc { tail: t, head: h, label: a.label.clone() });
            }
        }
        Ok((g, map))
    }

    /// Replaces edge `e` by a path with `times` new inner vertices. The path
    /// edges take the place of `e` followed by appended edges.
    pub fn subdivide(&self, e: usize, times: usize) -> Result<MixedGraph> {
        self.check_edge_indices(&[e])?;
        let mut g = self.clone();
        let Edge { u, v, label } = self.edges[e].clone();
        let mut prev = u;
        let mut path = Vec::with_capacity(times + 1);
        for _ in 0..times {
            let w = g.add_vertex();
            path.push((prev, w));
            prev = w;
        }
        path.push((prev, v));
        g.edges[e] = Edge { u: path[0].0, v: path[0].1, label: label.clone() };
        for &(a, b) in &path[1..] {
            g.edges.push(Edge { u: a, v: b, label: label.clone() });
        }
        Ok(g)
    }

    /// Subdivides every edge `times` times. Edge `i` of the input becomes the
    /// path formed by edges `(times+1)*i ..= (times+1)*i + times`, and its inner
    /// vertices are `n + times*i ..`, in order from `u` to `v`.
    pub fn subdivide_all(&self, times: usize) -> MixedGraph {
        let mut g = MixedGraph::new(self.n + times * self.edges.len());
        g.arcs = self.arcs.clone();
        for (i, e) in self.edges.iter().enumerate() {
            let mut prev = e.u;
            for j in 0..times {
                let w = self.n + times * i + j;
                g.edges.push(Edge { u: prev, v: w, label: e.label.clone() });
                prev = w;
            }
            g.edges.push(Edge { u: prev, v: e.v, label: e.label.clone() });
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &MixedGraph) -> MixedGraph {
        let off = self.n;
        let mut g = self.clone();
        g.n += other.n;
        for e in &other.edges {
            g.edges.push(Edge { u: e.u + off, v: e.v + off, label: e.label.clone() });
        }
        for a in &other.arcs {
            g.arcs.push(Arc { tail: a.tail + off, head: a.head + off, label: a.label.clone() });
        }
        g
    }

    /// Relabels vertices by `perm` (old id → new id).
    pub fn permute(&self, perm: &[VertexId]) -> Result<MixedGraph> {
        if perm.len() != self.n {
            return Err(Error::Precondition("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_vertex(p)?;
            if seen[p] {
                return Err(Error::Precondition("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut g = MixedGraph::new(self.n);
        for e in &self.edges {
            g.edges.push(Edge { u: perm[e.u], v: perm[e.v], label: e.label.clone() });
        }
        for a in &self.arcs {
            g.arcs.push(Arc { tail: perm[a.tail], head: perm[a.head], label: a.label.clone() });
        }
        Ok(g)
    }

    /// Number of arcs leaving `v`.
    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arcs.iter().filter(|a| a.tail == v).count()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.arcs.iter().filter(|a| a.head == v).count()
    }

    /// Number of undirected edges at `v`.
    pub fn edge_degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    /// Degree of `v` in the underlying graph.
    pub fn total_degree(&self, v: VertexId) -> usize {
        self.edge_degree(v) + self.out_degree(v) + self.in_degree(v)
    }

    /// Whether the underlying graph is connected (true for n ≤ 1).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.undirected_adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    /// Adjacency lists of the underlying graph: `(neighbour, element)`.
    pub fn undirected_adjacency(&self) -> Vec<Vec<(VertexId, ElementRef)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, ElementRef::Edge(i)));
            adj[e.v].push((e.u, ElementRef::Edge(i)));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            adj[a.tail].push((a.head, ElementRef::Arc(i)));
            adj[a.head].push((a.tail, ElementRef::Arc(i)));
        }
        adj
    }

    /// Indices of arcs that have an opposite arc (a digon partner) in the graph.
    pub fn arcs_in_digons(&self) -> Vec<bool> {
        let mut out = vec![false; self.arcs.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            out[i] = self.arcs.iter().any(|b| b.tail == a.head && b.head == a.tail);
        }
        out
    }
}

/// Per-edge decision of a partial orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeDecision {
    Keep,
    Orient { tail: VertexId, head: VertexId },
}

/// An undirected graph together with a keep/orient decision for each edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialOrientation {
    source: MixedGraph,
    decisions: Vec<EdgeDecision>,
}

impl PartialOrientation {
    pub fn new(source: MixedGraph, decisions: Vec<EdgeDecision>) -> Result<Self> {
        if !source.is_graph() {
            return Err(Error::Precondition("partial orientation source must be undirected".into()));
        }
        if decisions.len() != source.num_edges() {
            return Err(Error::Precondition(format!(
                "{} decisions for {} edges",
                decisions.len(),
                source.num_edges()
            )));
        }
        for (i, d) in decisions.iter().enumerate() {
            if let EdgeDecision::Orient { tail, head } = *d {
                if !source.edges[i].joins(tail, head) {
                    return Err(Error::Precondition(format!(
                        "edge {i} cannot be oriented as {tail}->{head}"
                    )));
                }
            }
        }
        Ok(PartialOrientation { source, decisions })
    }

    pub fn source(&self) -> &MixedGraph {
        &self.source
    }

    pub fn decisions(&self) -> &[EdgeDecision] {
        &self.decisions
    }

    pub fn oriented_count(&self) -> usize {
        self.decisions
            .iter()
            .filter(|d| matches!(d, EdgeDecision::Orient { .. }))
            .count()
    }

    /// The mixed graph with kept edges followed by oriented arcs, both in
    /// source edge order.
    pub fn realize(&self) -> MixedGraph {
        let mut g = MixedGraph::new(self.source.n);
        for (e, d) in self.source.edges.iter().zip(&self.decisions) {
            match *d {
                EdgeDecision::Keep => g.edges.push(e.clone()),
                EdgeDecision::Orient { tail, head } => {
                    g.arcs.push(Arc { tail, head, label: e.label.clone() })
                }
            }
        }
        g
    }
}

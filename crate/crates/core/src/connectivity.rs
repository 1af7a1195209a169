//! Cut and connectivity oracles for mixed graphs.
//!
//! Edges are usable in either direction, once. Arc connectivity is computed by
//! max-flow on the digon expansion; vertex connectivity by the usual
//! vertex-splitting expansion.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{FlowGraph, INF};
use crate::graph::{ElementRef, MixedGraph, VertexId};

/// Result of a cut query for a vertex set `X` (the `side`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSet {
    pub side: Vec<bool>,
    /// Undirected edges with exactly one end in `X`.
    pub d: usize,
    /// Arcs leaving `X`.
    pub d_plus: usize,
    /// Arcs entering `X`.
    pub d_minus: usize,
    pub crossing: Vec<ElementRef>,
}

impl CutSet {
    pub fn members(&self) -> Vec<VertexId> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }
}

pub fn cut_set(m: &MixedGraph, side: &[bool]) -> Result<CutSet> {
    if side.len() != m.n() {
        return Err(Error::Precondition("cut side has wrong length".into()));
    }
    let inside = side.iter().filter(|&&b| b).count();
    if inside == 0 || inside == m.n() {
        return Err(Error::Precondition("cut side must be a non-empty proper subset".into()));
    }
    let mut cut = CutSet { side: side.to_vec(), d: 0, d_plus: 0, d_minus: 0, crossing: Vec::new() };
    for (i, e) in m.edges().iter().enumerate() {
        if side[e.u] != side[e.v] {
            cut.d += 1;
            cut.crossing.push(ElementRef::Edge(i));
        }
    }
    for (i, a) in m.arcs().iter().enumerate() {
        if side[a.tail] && !side[a.head] {
            cut.d_plus += 1;
            cut.crossing.push(ElementRef::Arc(i));
        } else if !side[a.tail] && side[a.head] {
            cut.d_minus += 1;
            cut.crossing.push(ElementRef::Arc(i));
        }
    }
    Ok(cut)
}

/// Flow network of the digon expansion: one node per vertex.
fn arc_network(m: &MixedGraph) -> FlowGraph {
    let mut g = FlowGraph::new(m.n());
    for e in m.edges() {
        g.add_arc(e.u, e.v, 1);
        g.add_arc(e.v, e.u, 1);
    }
    for a in m.arcs() {
        g.add_arc(a.tail, a.head, 1);
    }
    g
}

/// Vertex-split network: `v_in = 2v`, `v_out = 2v+1`, internal capacity 1,
/// element arcs with capacity `element_cap`.
fn split_network(m: &MixedGraph, element_cap: i64) -> FlowGraph {
    let n = m.n();
    let mut g = FlowGraph::new(2 * n);
    for v in 0..n {
        g.add_arc(2 * v, 2 * v + 1, 1);
    }
    for e in m.edges() {
        g.add_arc(2 * e.u + 1, 2 * e.v, element_cap);
        g.add_arc(2 * e.v + 1, 2 * e.u, element_cap);
    }
    for a in m.arcs() {
        g.add_arc(2 * a.tail + 1, 2 * a.head, element_cap);
    }
    g
}

fn check_pair(m: &MixedGraph, x: VertexId, y: VertexId) -> Result<()> {
    for v in [x, y] {
        if v >= m.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: m.n() });
        }
    }
    if x == y {
        return Err(Error::Precondition("connectivity between a vertex and itself".into()));
    }
    Ok(())
}

/// Maximum number of element-disjoint x→y paths (edges traversed in either
/// direction).
pub fn local_arc_connectivity(m: &MixedGraph, x: VertexId, y: VertexId) -> Result<usize> {
    check_pair(m, x, y)?;
    Ok(arc_network(m).max_flow(x, y, INF) as usize)
}

/// Local edge connectivity in the underlying graph.
pub fn local_edge_connectivity(g: &MixedGraph, x: VertexId, y: VertexId) -> Result<usize> {
    local_arc_connectivity(&g.underlying_graph(), x, y)
}

/// Maximum number of internally vertex-disjoint x→y paths; parallel direct
/// elements are counted with multiplicity.
pub fn local_vertex_connectivity(m: &MixedGraph, x: VertexId, y: VertexId) -> Result<usize> {
    check_pair(m, x, y)?;
    Ok(split_network(m, 1).max_flow(2 * x + 1, 2 * y, INF) as usize)
}

/// Whether every vertex can reach every other one.
pub fn is_strong(m: &MixedGraph) -> bool {
    let n = m.n();
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for e in m.edges() {
        fwd[e.u].push(e.v);
        fwd[e.v].push(e.u);
        bwd[e.u].push(e.v);
        bwd[e.v].push(e.u);
    }
    for a in m.arcs() {
        fwd[a.tail].push(a.head);
        bwd[a.head].push(a.tail);
    }
    let reach_all = |adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    };
    reach_all(&fwd) && reach_all(&bwd)
}

/// Whether `d⁺_A(X) + d_E(X) ≥ k` for every non-empty proper subset `X`.
pub fn is_k_arc_strong(m: &MixedGraph, k: usize) -> bool {
    Target::ArcStrong(k).holds(m)
}

/// Minimum over ordered pairs of the local arc connectivity; `None` if n < 2.
pub fn arc_strong_connectivity(m: &MixedGraph) -> Option<usize> {
    if m.n() < 2 {
        return None;
    }
    let mut g = arc_network(m);
    let mut best = usize::MAX;
    for v in 1..m.n() {
        for (s, t) in [(0, v), (v, 0)] {
            g.reset();
            best = best.min(g.max_flow(s, t, INF) as usize);
        }
    }
    Some(best)
}

/// Whether the graph has more than `k` vertices and stays strong after
/// deleting any set of fewer than `k` vertices.
pub fn is_k_strong(m: &MixedGraph, k: usize) -> bool {
    m.n() > k && Target::Strong(k).holds(m)
}

/// Whether there are `k` internally vertex-disjoint paths between every
/// ordered pair of distinct vertices of `s`.
pub fn is_k_strong_in(m: &MixedGraph, s: &[VertexId], k: usize) -> bool {
    let mut g = split_network(m, 1);
    for &a in s {
        for &b in s {
            if a == b {
                continue;
            }
            g.reset();
            if (g.max_flow(2 * a + 1, 2 * b, k as i64) as usize) < k {
                return false;
            }
        }
    }
    true
}

/// Edge indices of the bridges of the underlying graph (edges first, then
/// arcs offset by the edge count).
pub fn bridges(g: &MixedGraph) -> Vec<usize> {
    let n = g.n();
    let m = g.num_edges() + g.num_arcs();
    let mut adj = vec![Vec::new(); n];
    let mut ends = Vec::with_capacity(m);
    for e in g.edges() {
        ends.push((e.u, e.v));
    }
    for a in g.arcs() {
        ends.push((a.tail, a.head));
    }
    for (i, &(u, v)) in ends.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent edge, next adjacency position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (x, pe, ref mut pos)) = stack.last_mut() {
            if *pos < adj[x].len() {
                let (y, ei) = adj[x][*pos];
                *pos += 1;
                if ei == pe {
                    continue;
                }
                if disc[y] == usize::MAX {
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    stack.push((y, ei, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[x]);
                    if low[x] > disc[p] {
                        out.push(pe);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Edge connectivity of the underlying graph; `None` when n < 2.
pub fn edge_connectivity(g: &MixedGraph) -> Option<usize> {
    arc_strong_connectivity(&g.underlying_graph())
}

/// Whether the underlying graph is `c`-edge-connected (true for n ≤ 1).
pub fn is_k_edge_connected(g: &MixedGraph, c: usize) -> bool {
    is_k_arc_strong(&g.underlying_graph(), c)
}

/// Largest vertex count handled by subset enumeration.
pub const SUBSET_ENUMERATION_LIMIT: usize = 20;
/// Largest number of edge subsets examined by the sparse enumeration route.
pub const EDGE_SUBSET_LIMIT: u64 = 20_000_000;

fn binomial_sum(m: u64, c: u64) -> u64 {
    let mut total = 0u64;
    let mut term = 1u64;
    for i in 0..=c.min(m) {
        total = total.saturating_add(term);
        term = term.saturating_mul(m - i) / (i + 1);
    }
    total
}

/// Every bipartition `{X, V−X}` of the underlying graph with `d(X) ≤ c`, one
/// representative per complement pair (the side containing vertex 0).
/// Results are sorted by side.
pub fn enumerate_cuts_up_to(g: &MixedGraph, c: usize) -> Result<Vec<CutSet>> {
    let ug = g.underlying_graph();
    let n = ug.n();
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut sides: Vec<Vec<bool>> = Vec::new();
    if n <= SUBSET_ENUMERATION_LIMIT {
        for mask in 0u64..(1u64 << (n - 1)) {
            // vertex 0 always inside; bits of mask choose vertices 1..n
            if mask == (1u64 << (n - 1)) - 1 {
                continue;
            }
            let side: Vec<bool> = (0..n).map(|v| v == 0 || mask >> (v - 1) & 1 == 1).collect();
            let d = ug.edges().iter().filter(|e| side[e.u] != side[e.v]).count();
            if d <= c {
                sides.push(side);
            }
        }
    } else {
        let m = ug.num_edges();
        if binomial_sum(m as u64, c as u64) > EDGE_SUBSET_LIMIT {
            return Err(Error::SizeLimit(format!(
                "cut enumeration up to {c} on {n} vertices and {m} edges"
            )));
        }
        let mut found: HashSet<Vec<bool>> = HashSet::new();
        let mut chosen = Vec::new();
        cuts_by_edge_subsets(&ug, c, 0, &mut chosen, &mut found);
        sides = found.into_iter().collect();
    }
    sides.sort();
    sides.into_iter().map(|s| cut_set(&ug, &s)).collect()
}

fn cuts_by_edge_subsets(
    g: &MixedGraph,
    c: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    found: &mut HashSet<Vec<bool>>,
) {
    record_cuts_with_exact_boundary(g, chosen, found);
    if chosen.len() == c {
        return;
    }
    for i in start..g.num_edges() {
        chosen.push(i);
        cuts_by_edge_subsets(g, c, i + 1, chosen, found);
        chosen.pop();
    }
}

/// Records every side `X ∋ 0` whose boundary is exactly `f`.
fn record_cuts_with_exact_boundary(g: &MixedGraph, f: &[usize], found: &mut HashSet<Vec<bool>>) {
    let n = g.n();
    let mut removed = vec![false; g.num_edges()];
    for &i in f {
        removed[i] = true;
    }
    // components of G − f
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for (i, e) in g.edges().iter().enumerate() {
        if !removed[i] {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut comp_id = BTreeMap::new();
    let comp: Vec<usize> = (0..n)
        .map(|v| {
            let r = find(&mut parent, v);
            let next = comp_id.len();
            *comp_id.entry(r).or_insert(next)
        })
        .collect();
    let k = comp_id.len();
    if !(2..=20).contains(&k) {
        return;
    }
    // every removed edge must join different components
    if f.iter().any(|&i| comp[g.edges()[i].u] == comp[g.edges()[i].v]) {
        return;
    }
    let c0 = comp[0];
    for mask in 0u32..(1u32 << k) {
        if mask >> c0 & 1 == 0 || mask == (1u32 << k) - 1 {
            continue;
        }
        let side: Vec<bool> = (0..n).map(|v| mask >> comp[v] & 1 == 1).collect();
        if f.iter().all(|&i| side[g.edges()[i].u] != side[g.edges()[i].v]) {
            found.insert(side);
        }
    }
}

/// Whether `G − X` is `2(k−|X|)`-edge-connected for every `X` with `|X| < k`.
pub fn check_kstrong_orientation_condition(g: &MixedGraph, k: usize) -> bool {
    let ug = g.underlying_graph();
    let mut subset = Vec::new();
    fn rec(ug: &MixedGraph, k: usize, start: usize, subset: &mut Vec<usize>) -> bool {
        let (rest, _) = ug.delete_vertices(subset).expect("valid subset");
        if !is_k_arc_strong(&rest, 2 * (k - subset.len())) {
            return false;
        }
        if subset.len() + 1 < k {
            for v in start..ug.n() {
                subset.push(v);
                let ok = rec(ug, k, v + 1, subset);
                subset.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    rec(&ug, k, 0, &mut subset)
}

/// A requirement function on ordered vertex pairs; missing pairs require 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Requirement {
    pub r: BTreeMap<(VertexId, VertexId), usize>,
}

impl Requirement {
    pub fn new() -> Self {
        Requirement::default()
    }

    /// Uniform requirement `value` on all ordered pairs of `0..n`.
    pub fn uniform(n: usize, value: usize) -> Self {
        let mut r = Requirement::new();
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    r.set(x, y, value);
                }
            }
        }
        r
    }

    pub fn set(&mut self, x: VertexId, y: VertexId, value: usize) {
        if x == y {
            return;
        }
        if value == 0 {
            self.r.remove(&(x, y));
        } else {
            self.r.insert((x, y), value);
        }
    }

    pub fn get(&self, x: VertexId, y: VertexId) -> usize {
        self.r.get(&(x, y)).copied().unwrap_or(0)
    }
}

/// A connectivity predicate usable as a search target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// k-arc-strong (on an undirected graph: k-edge-connected).
    ArcStrong(usize),
    /// Deleting any fewer than k vertices leaves a strong graph. The vertex
    /// count condition `n > k` is not part of this predicate.
    Strong(usize),
    /// `λ(x,y) ≥ r(x,y)` for all pairs.
    Requirement(Requirement),
    /// `M − v` is k-arc-strong for every listed `v`.
    ArcStrongWithout { k: usize, vertices: Vec<VertexId> },
    All(Vec<Target>),
}

/// A certificate that some target fails: the number of elements usable from
/// `from` into `to` is below `need`. An element joining exactly `pair`
/// (in the usable direction) fulfils the demand on its own.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Separation {
    pub from: Vec<bool>,
    pub to: Vec<bool>,
    pub need: usize,
    pub pair: Option<(VertexId, VertexId)>,
}

impl Separation {
    /// Contribution of an arc `t→h` to this demand.
    pub fn arc_gain(&self, t: VertexId, h: VertexId) -> usize {
        if self.from[t] && self.to[h] {
            if self.pair == Some((t, h)) {
                self.need
            } else {
                1
            }
        } else {
            0
        }
    }

    /// Contribution of an edge `uv` to this demand.
    pub fn edge_gain(&self, u: VertexId, v: VertexId) -> usize {
        self.arc_gain(u, v).max(self.arc_gain(v, u))
    }

    /// Total contribution of the elements of `m`.
    pub fn supply(&self, m: &MixedGraph) -> usize {
        let a: usize = m.arcs().iter().map(|a| self.arc_gain(a.tail, a.head)).sum();
        let e: usize = m.edges().iter().map(|e| self.edge_gain(e.u, e.v)).sum();
        a + e
    }
}

impl Target {
    pub fn holds(&self, m: &MixedGraph) -> bool {
        self.violations(m, 1).is_empty()
    }

    /// Up to `limit` separations certifying that the target fails (empty iff
    /// it holds).
    pub fn violations(&self, m: &MixedGraph, limit: usize) -> Vec<Separation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        self.collect(m, limit.max(1), &mut out, &mut seen);
        out
    }

    fn collect(
        &self,
        m: &MixedGraph,
        limit: usize,
        out: &mut Vec<Separation>,
        seen: &mut HashSet<Separation>,
    ) {
        match self {
            Target::ArcStrong(k) => {
                let pairs: Vec<(usize, usize, usize)> = (1..m.n())
                    .flat_map(|v| [(0, v, *k), (v, 0, *k)])
                    .collect();
                arc_pair_violations(m, &pairs, limit, out, seen);
            }
            Target::Requirement(r) => {
                let pairs: Vec<(usize, usize, usize)> =
                    r.r.iter().filter(|(&(x, y), _)| x < m.n() && y < m.n()).map(|(&(x, y), &v)| (x, y, v)).collect();
                arc_pair_violations(m, &pairs, limit, out, seen);
            }
            Target::ArcStrongWithout { k, vertices } => {
                for &v in vertices {
                    if out.len() >= limit {
                        return;
                    }
                    if m.n() <= 2 || v >= m.n() {
                        continue;
                    }
                    let (rest, map) = m.delete_vertices(&[v]).expect("valid vertex");
                    let mut back = vec![0; rest.n()];
                    for (old, new) in map.iter().enumerate() {
                        if let Some(nw) = new {
                            back[*nw] = old;
                        }
                    }
                    let pairs: Vec<(usize, usize, usize)> =
                        (1..rest.n()).flat_map(|u| [(0, u, *k), (u, 0, *k)]).collect();
                    let mut local = Vec::new();
                    let mut local_seen = HashSet::new();
                    arc_pair_violations(&rest, &pairs, limit - out.len(), &mut local, &mut local_seen);
                    for s in local {
                        let lift = |side: &[bool]| {
                            let mut full = vec![false; m.n()];
                            for (i, &b) in side.iter().enumerate() {
                                full[back[i]] = b;
                            }
                            full
                        };
                        let sep = Separation { from: lift(&s.from), to: lift(&s.to), need: s.need, pair: None };
                        if seen.insert(sep.clone()) {
                            out.push(sep);
                        }
                    }
                }
            }
            Target::Strong(k) => strong_violations(m, *k, limit, out, seen),
            Target::All(ts) => {
                for t in ts {
                    if out.len() >= limit {
                        return;
                    }
                    t.collect(m, limit, out, seen);
                }
            }
        }
    }
}

fn arc_pair_violations(
    m: &MixedGraph,
    pairs: &[(usize, usize, usize)],
    limit: usize,
    out: &mut Vec<Separation>,
    seen: &mut HashSet<Separation>,
) {
    if m.n() < 2 {
        return;
    }
    let mut g = arc_network(m);
    for &(x, y, need) in pairs {
        if out.len() >= limit {
            return;
        }
        if need == 0 || x == y {
            continue;
        }
        g.reset();
        if (g.max_flow(x, y, need as i64) as usize) >= need {
            continue;
        }
        let src = g.source_side(x);
        let snk = g.sink_side(y);
        for from in [src, snk.iter().map(|b| !b).collect::<Vec<_>>()] {
            let to: Vec<bool> = from.iter().map(|b| !b).collect();
            let sep = Separation { from, to, need, pair: None };
            if seen.insert(sep.clone()) {
                out.push(sep);
            }
        }
    }
}

/// Direct adjacency in the usable direction: `direct[x][y]` iff an arc x→y or
/// an edge xy exists.
fn direct_matrix(m: &MixedGraph) -> Vec<Vec<bool>> {
    let n = m.n();
    let mut d = vec![vec![false; n]; n];
    for e in m.edges() {
        d[e.u][e.v] = true;
        d[e.v][e.u] = true;
    }
    for a in m.arcs() {
        d[a.tail][a.head] = true;
    }
    d
}

fn strong_violations(
    m: &MixedGraph,
    k: usize,
    limit: usize,
    out: &mut Vec<Separation>,
    seen: &mut HashSet<Separation>,
) {
    let n = m.n();
    if n < 2 || k == 0 {
        return;
    }
    let direct = direct_matrix(m);
    let mut g = split_network(m, INF);
    // Any separator of size < k misses one of the first k vertices (or all of
    // them when n ≤ k), so pairs involving those suffice.
    for i in 0..k.min(n) {
        for y in 0..n {
            if y == i {
                continue;
            }
            for (x, t) in [(i, y), (y, i)] {
                if out.len() >= limit {
                    return;
                }
                if direct[x][t] {
                    continue;
                }
                g.reset();
                let f = g.max_flow(2 * x + 1, 2 * t, k as i64) as usize;
                if f >= k {
                    continue;
                }
                let src = g.source_side(2 * x + 1);
                let snk = g.sink_side(2 * t);
                let need = k - f;
                // source-side separation
                let mut from = vec![false; n];
                let mut to = vec![false; n];
                for v in 0..n {
                    if src[2 * v + 1] || v == x {
                        from[v] = true;
                    } else if !src[2 * v] {
                        to[v] = true;
                    }
                }
                push_sep(Separation { from, to, need, pair: Some((x, t)) }, out, seen);
                // sink-side separation
                let mut from = vec![false; n];
                let mut to = vec![false; n];
                for v in 0..n {
                    if snk[2 * v] || v == t {
                        to[v] = true;
                    } else if !snk[2 * v + 1] {
                        from[v] = true;
                    }
                }
                push_sep(Separation { from, to, need, pair: Some((x, t)) }, out, seen);
            }
        }
    }
}

fn push_sep(sep: Separation, out: &mut Vec<Separation>, seen: &mut HashSet<Separation>) {
    if seen.insert(sep.clone()) {
        out.push(sep);
    }
}

/// Finds `k` paths from `v` to distinct vertices of `targets` (or, with
/// `inward`, from distinct vertices of `targets` to `v`) that pairwise share
/// only `v`. Paths are returned as vertex sequences starting (ending) at `v`.
pub fn find_fan(
    m: &MixedGraph,
    v: VertexId,
    targets: &[VertexId],
    k: usize,
    inward: bool,
) -> Option<Vec<Vec<VertexId>>> {
    let n = m.n();
    let work = if inward {
        let mut r = MixedGraph::new(n);
        for e in m.edges() {
            r.add_edge(e.u, e.v).ok()?;
        }
        for a in m.arcs() {
            r.add_arc(a.head, a.tail).ok()?;
        }
        r
    } else {
        m.clone()
    };
    let mut g = split_network(&work, 1);
    let sink = g.add_node();
    let mut to_sink = vec![None; n];
    for &t in targets {
        if t != v && to_sink[t].is_none() {
            to_sink[t] = Some(g.add_arc(2 * t + 1, sink, 1));
        }
    }
    if (g.max_flow(2 * v + 1, sink, k as i64) as usize) < k {
        return None;
    }
    // Element arcs follow the n internal arcs, in insertion order.
    let mut out_flow: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut id = n;
    for e in work.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            for _ in 0..g.flow(id) {
                out_flow[a].push(b);
            }
            id += 1;
        }
    }
    for a in work.arcs() {
        for _ in 0..g.flow(id) {
            out_flow[a.tail].push(a.head);
        }
        id += 1;
    }
    let mut paths = Vec::new();
    while paths.len() < k {
        let first = out_flow[v].pop()?;
        let mut path = vec![v, first];
        let mut x = first;
        // every vertex other than v carries at most one unit of flow
        while to_sink[x].is_none_or(|a| g.flow(a) == 0) {
            x = out_flow[x].pop()?;
            path.push(x);
        }
        if inward {
            path.reverse();
        }
        paths.push(path);
    }
    Some(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn directed_cycle(n: usize) -> MixedGraph {
        MixedGraph::from_arcs(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize) -> MixedGraph {
        MixedGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn complete_digraph(n: usize) -> MixedGraph {
        let mut arcs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    arcs.push((a, b));
                }
            }
        }
        MixedGraph::from_arcs(n, &arcs).unwrap()
    }

    fn complete_graph(n: usize) -> MixedGraph {
        let mut es = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                es.push((a, b));
            }
        }
        MixedGraph::from_edges(n, &es).unwrap()
    }

    #[test]
    fn local_values() {
        assert_eq!(local_arc_connectivity(&directed_cycle(3), 0, 1).unwrap(), 1);
        assert_eq!(local_edge_connectivity(&cycle(4), 0, 2).unwrap(), 2);
        let theta = MixedGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(local_edge_connectivity(&theta, 0, 1).unwrap(), 3);
        assert!(local_arc_connectivity(&theta, 1, 1).is_err());
    }

    #[test]
    fn arc_strong_examples() {
        assert!(is_k_arc_strong(&complete_digraph(3), 2));
        assert!(!is_k_arc_strong(&directed_cycle(4), 2));
        assert!(is_k_arc_strong(&directed_cycle(4), 1));
    }

    #[test]
    fn vertex_strong_examples() {
        assert!(is_k_strong(&complete_digraph(4), 3));
        assert!(!is_k_strong(&complete_digraph(3), 3));
        assert!(!is_k_strong(&directed_cycle(5), 2));
        assert!(is_k_strong(&complete_graph(5), 4));
        assert!(!is_k_strong(&cycle(5), 3));
        assert!(is_k_strong(&cycle(5), 2));
    }

    #[test]
    fn strong_in_subset() {
        let d = complete_digraph(4);
        assert!(is_k_strong_in(&d, &[0, 1, 2], 3));
        assert!(!is_k_strong_in(&directed_cycle(4), &[0, 2], 2));
    }

    #[test]
    fn bridges_of_tree_and_cycle() {
        let tree = MixedGraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(bridges(&tree), vec![0, 1, 2]);
        assert!(bridges(&cycle(5)).is_empty());
        let par = MixedGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(bridges(&par), vec![2]);
    }

    #[test]
    fn edge_connectivity_values() {
        assert_eq!(edge_connectivity(&cycle(6)), Some(2));
        assert_eq!(edge_connectivity(&complete_graph(5)), Some(4));
        assert_eq!(edge_connectivity(&MixedGraph::new(1)), None);
    }

    #[test]
    fn c4_two_cuts() {
        let cuts = enumerate_cuts_up_to(&cycle(4), 2).unwrap();
        // every way of removing two of the four edges splits C4: C(4,2) = 6
        assert_eq!(cuts.len(), 6);
        assert!(cuts.iter().all(|c| c.d == 2));
    }

    #[test]
    fn orientation_condition_examples() {
        assert!(check_kstrong_orientation_condition(&complete_graph(6), 2));
        assert!(!check_kstrong_orientation_condition(&cycle(4), 2));
        assert!(check_kstrong_orientation_condition(&cycle(4), 1));
        assert!(!check_kstrong_orientation_condition(&complete_graph(4), 2));
    }

    #[test]
    fn separations_are_valid_certificates() {
        let d = directed_cycle(5);
        let v = Target::Strong(2).violations(&d, 10);
        assert!(!v.is_empty());
        for s in &v {
            assert!(s.supply(&d) < s.need);
        }
        let v = Target::ArcStrong(2).violations(&d, 10);
        for s in &v {
            assert!(s.supply(&d) < s.need);
        }
    }

    #[test]
    fn fan_paths() {
        let d = complete_digraph(4);
        let fan = find_fan(&d, 0, &[1, 2, 3], 3, false).unwrap();
        assert_eq!(fan.len(), 3);
        for p in &fan {
            assert_eq!(p[0], 0);
        }
        let fan_in = find_fan(&d, 0, &[1, 2, 3], 3, true).unwrap();
        for p in &fan_in {
            assert_eq!(*p.last().unwrap(), 0);
        }
        assert!(find_fan(&directed_cycle(4), 0, &[1, 2, 3], 2, false).is_none());
    }
}

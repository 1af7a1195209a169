//! Minimum-weight packings of k arc-disjoint out- or in-branchings.
//!
//! The arc set of a packing is a common basis of two matroids on the arcs:
//! the union of k copies of the cycle matroid of the underlying graph (an arc
//! set is independent iff every vertex set X spans at most k(|X|−1) arcs)
//! and the partition matroid allowing k arcs into each non-root vertex and
//! none into the root. A minimum-weight common independent set of size
//! k(n−1) is grown by shortest augmenting paths, then split into branchings
//! greedily while keeping the remainder packable.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::flow::{FlowGraph, INF};
use crate::error::{Error, Result};
use crate::graph::{MixedGraph, VertexId};
use crate::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Out,
    In,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingPacking {
    pub root: VertexId,
    pub direction: Direction,
    /// Arc indices of each branching.
    pub branchings: Vec<Vec<usize>>,
    pub weight: Weight,
}

impl BranchingPacking {
    pub fn arcs(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.branchings.iter().flatten().copied().collect();
        a.sort_unstable();
        a
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PackingOutcome {
    Packing(BranchingPacking),
    /// A vertex set containing the root (for in-packings: avoiding it) with
    /// fewer than k leaving arcs.
    Infeasible { side: Vec<bool>, degree: usize },
}

/// Max over X ⊇ {u, v} of |I[X]| − k(|X|−1), and the smallest maximizer.
fn densest_through(n: usize, ends: &[(usize, usize)], k: usize, u: usize, v: usize) -> (i64, Vec<bool>) {
    let m = ends.len();
    let (s, t) = (m + n, m + n + 1);
    let mut g = FlowGraph::new(m + n + 2);
    for (i, &(a, b)) in ends.iter().enumerate() {
        g.add_arc(s, i, 1);
        g.add_arc(i, m + a, INF);
        g.add_arc(i, m + b, INF);
    }
    for x in 0..n {
        g.add_arc(m + x, t, k as i64);
    }
    g.add_arc(s, m + u, INF);
    g.add_arc(s, m + v, INF);
    let cut = g.max_flow(s, t, INF);
    let reach = g.source_side(s);
    let side: Vec<bool> = (0..n).map(|x| reach[m + x]).collect();
    let size = side.iter().filter(|b| **b).count() as i64;
    let inside = ends.iter().filter(|&&(a, b)| side[a] && side[b]).count() as i64;
    // cut = (|I| − |I[X]|) + k|X| for the residual side, on top of the two forced
    // infinite arcs which never cross
    debug_assert_eq!(cut, ends.len() as i64 - inside + k as i64 * size);
    (inside - k as i64 * (size - 1), side)
}

struct Intersection<'a> {
    n: usize,
    k: usize,
    root: usize,
    arcs: &'a [(usize, usize)],
    weights: &'a [Weight],
}

impl Intersection<'_> {
    fn solve(&self) -> Option<Vec<usize>> {
        let target = self.k * (self.n - 1);
        let m = self.arcs.len();
        let mut in_set = vec![false; m];
        let mut size = 0;
        let cap = |v: usize| if v == self.root { 0 } else { self.k };
        while size < target {
            let chosen: Vec<usize> = (0..m).filter(|&i| in_set[i]).collect();
            let ends: Vec<(usize, usize)> = chosen.iter().map(|&i| self.arcs[i]).collect();
            let mut indeg = vec![0; self.n];
            for &(_, h) in &ends {
                indeg[h] += 1;
            }
            // exchange graph over arc indices
            let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
            let mut source = vec![false; m];
            let mut sink = vec![false; m];
            for x in 0..m {
                if in_set[x] {
                    continue;
                }
                let (u, v) = self.arcs[x];
                let (val, side) = densest_through(self.n, &ends, self.k, u, v);
                if val < 0 {
                    source[x] = true;
                    for &y in &chosen {
                        succ[y].push(x);
                    }
                } else {
                    for &y in &chosen {
                        let (a, b) = self.arcs[y];
                        if side[a] && side[b] {
                            succ[y].push(x);
                        }
                    }
                }
                if indeg[v] < cap(v) {
                    sink[x] = true;
                    for &y in &chosen {
                        succ[x].push(y);
                    }
                } else {
                    for &y in &chosen {
                        if self.arcs[y].1 == v {
                            succ[x].push(y);
                        }
                    }
                }
            }
            // Bellman-Ford on vertex lengths, comparing (length, hops)
            let len = |i: usize| if in_set[i] { -self.weights[i] } else { self.weights[i] };
            let mut dist: Vec<Option<(Weight, usize)>> = vec![None; m];
            let mut prev = vec![usize::MAX; m];
            for x in 0..m {
                if source[x] {
                    dist[x] = Some((len(x), 0));
                }
            }
            for _ in 0..m {
                let mut changed = false;
                for x in 0..m {
                    let Some((dx, hx)) = dist[x] else { continue };
                    for &y in &succ[x] {
                        let cand = (dx + len(y), hx + 1);
                        if dist[y].is_none_or(|d| cand < d) {
                            dist[y] = Some(cand);
                            prev[y] = x;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            let end = (0..m)
                .filter(|&x| sink[x] && dist[x].is_some())
                .min_by(|&a, &b| dist[a].cmp(&dist[b]).then(a.cmp(&b)))?;
            let mut x = end;
            loop {
                in_set[x] = !in_set[x];
                if prev[x] == usize::MAX {
                    break;
                }
                x = prev[x];
            }
            size += 1;
        }
        Some((0..m).filter(|&i| in_set[i]).collect())
    }
}

/// Whether `λ(root, v) ≥ need` for every v in the digraph on `arcs`, with the
/// vertices in `grown` merged into the root.
fn rooted_connectivity_at_least(n: usize, arcs: &[(usize, usize)], root: usize, grown: &[bool], need: usize) -> bool {
    if need == 0 {
        return true;
    }
    (0..n).filter(|&v| !grown[v] && v != root).all(|v| {
        let mut g = FlowGraph::new(n);
        for &(a, b) in arcs {
            g.add_arc(a, b, 1);
        }
        for (x, &gr) in grown.iter().enumerate() {
            if gr && x != root {
                g.add_arc(root, x, INF);
            }
        }
        g.max_flow(root, v, need as i64) as usize >= need
    })
}

/// Splits an arc set where every non-root vertex has in-degree k (root 0)
/// and which is a union of k spanning trees into k out-branchings.
fn decompose(n: usize, k: usize, root: usize, arcs: &[(usize, usize)], ids: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut remaining: Vec<usize> = (0..arcs.len()).collect();
    let mut out = Vec::new();
    for level in (0..k).rev() {
        // grow one branching; the rest must keep `level` disjoint branchings
        let mut grown = vec![false; n];
        grown[root] = true;
        let mut taken = Vec::new();
        for _ in 1..n {
            let mut picked = None;
            for (pos, &i) in remaining.iter().enumerate() {
                let (a, b) = arcs[i];
                if !grown[a] || grown[b] {
                    continue;
                }
                let rest: Vec<(usize, usize)> =
                    remaining.iter().filter(|&&j| j != i).map(|&j| arcs[j]).collect();
                let mut g2 = grown.clone();
                g2[b] = true;
                // sets containing the grown part still need one more arc of
                // this branching, the others only the later branchings
                let ok = rooted_connectivity_at_least(n, &rest, root, &g2, level + 1)
                    && rooted_connectivity_at_least(n, &rest, root, &vec![false; n], level);
                if ok {
                    picked = Some(pos);
                    break;
                }
            }
            let pos = picked?;
            let i = remaining.remove(pos);
            grown[arcs[i].1] = true;
            taken.push(ids[i]);
        }
        taken.sort_unstable();
        out.push(taken);
    }
    Some(out)
}

/// Minimum-weight packing of `k` arc-disjoint branchings rooted at `root`
/// in the digraph `d`. In-branchings are computed as out-branchings of the
/// reversed digraph.
pub fn min_weight_branching_packing(
    d: &MixedGraph,
    k: usize,
    root: VertexId,
    weights: &[Weight],
    direction: Direction,
) -> Result<PackingOutcome> {
    if !d.is_digraph() {
        return Err(Error::Precondition("expected a digraph".into()));
    }
    if root >= d.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: d.n() });
    }
    if weights.len() != d.num_arcs() {
        return Err(Error::Precondition("one weight per arc required".into()));
    }
    if weights.iter().any(|w| *w < Weight::zero()) {
        return Err(Error::Precondition("weights must be non-negative".into()));
    }
    let n = d.n();
    let arcs: Vec<(usize, usize)> = d
        .arcs()
        .iter()
        .map(|a| match direction {
            Direction::Out => (a.tail, a.head),
            Direction::In => (a.head, a.tail),
        })
        .collect();
    // connectivity precheck with a violating set as certificate
    for v in 0..n {
        if v == root {
            continue;
        }
        let mut g = FlowGraph::new(n);
        for &(a, b) in &arcs {
            g.add_arc(a, b, 1);
        }
        let f = g.max_flow(root, v, k as i64) as usize;
        if f < k {
            let reach = g.source_side(root);
            let side = match direction {
                Direction::Out => reach,
                Direction::In => reach.iter().map(|b| !b).collect(),
            };
            return Ok(PackingOutcome::Infeasible { side, degree: f });
        }
    }
    if k == 0 || n == 1 {
        return Ok(PackingOutcome::Packing(BranchingPacking {
            root,
            direction,
            branchings: vec![Vec::new(); k],
            weight: Weight::zero(),
        }));
    }
    let chosen = Intersection { n, k, root, arcs: &arcs, weights }
        .solve()
        .ok_or_else(|| Error::Precondition("matroid intersection fell short of a basis".into()))?;
    let sub: Vec<(usize, usize)> = chosen.iter().map(|&i| arcs[i]).collect();
    let branchings = decompose(n, k, root, &sub, &chosen)
        .ok_or_else(|| Error::Precondition("common basis did not split into branchings".into()))?;
    let weight = chosen.iter().map(|&i| weights[i]).fold(Weight::zero(), |a, b| a + b);
    Ok(PackingOutcome::Packing(BranchingPacking { root, direction, branchings, weight }))
}

/// Checks that `p` is a packing of spanning branchings of `d`.
pub fn is_valid_packing(d: &MixedGraph, p: &BranchingPacking) -> bool {
    let n = d.n();
    let mut used = vec![false; d.num_arcs()];
    for b in &p.branchings {
        if b.len() + 1 != n {
            return false;
        }
        let mut parent_seen = vec![false; n];
        let mut adj = vec![Vec::new(); n];
        for &i in b {
            if i >= used.len() || used[i] {
                return false;
            }
            used[i] = true;
            let a = &d.arcs()[i];
            let (from, to) = match p.direction {
                Direction::Out => (a.tail, a.head),
                Direction::In => (a.head, a.tail),
            };
            if to == p.root || parent_seen[to] {
                return false;
            }
            parent_seen[to] = true;
            adj[from].push(to);
        }
        let mut seen = vec![false; n];
        seen[p.root] = true;
        let mut stack = vec![p.root];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: i64) -> Weight {
        Weight::from_integer(x)
    }

    #[test]
    fn bidirected_triangle_two_branchings() {
        let d = MixedGraph::from_arcs(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
        let PackingOutcome::Packing(p) =
            min_weight_branching_packing(&d, 2, 0, &[w(1); 6], Direction::Out).unwrap()
        else {
            panic!("packable")
        };
        assert_eq!(p.weight, w(4));
        assert!(is_valid_packing(&d, &p));
    }

    #[test]
    fn single_branching_is_min_arborescence() {
        // 0->1 (5), 0->2 (1), 2->1 (1): cheapest arborescence uses 0->2, 2->1
        let d = MixedGraph::from_arcs(3, &[(0, 1), (0, 2), (2, 1)]).unwrap();
        let PackingOutcome::Packing(p) =
            min_weight_branching_packing(&d, 1, 0, &[w(5), w(1), w(1)], Direction::Out).unwrap()
        else {
            panic!("packable")
        };
        assert_eq!(p.weight, w(2));
        assert_eq!(p.branchings, vec![vec![1, 2]]);
    }

    #[test]
    fn in_branchings_via_reversal() {
        let d = MixedGraph::from_arcs(3, &[(1, 0), (2, 1), (2, 0)]).unwrap();
        let PackingOutcome::Packing(p) =
            min_weight_branching_packing(&d, 1, 0, &[w(1), w(1), w(3)], Direction::In).unwrap()
        else {
            panic!("packable")
        };
        assert_eq!(p.weight, w(2));
        assert!(is_valid_packing(&d, &p));
    }

    #[test]
    fn path_certificate() {
        let d = MixedGraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        let PackingOutcome::Infeasible { side, degree } =
            min_weight_branching_packing(&d, 2, 0, &[w(1); 2], Direction::Out).unwrap()
        else {
            panic!("a path has no two disjoint branchings")
        };
        assert_eq!(degree, 1);
        assert!(side[0]);
    }
}

//! Strong partial orientations with a prescribed number of oriented edges.

use crate::connectivity::bridges;
use crate::error::{Error, Result};
use crate::graph::{EdgeDecision, MixedGraph, PartialOrientation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RobbinsOutcome {
    Feasible(PartialOrientation),
    /// No strong partial orientation orients `requested` edges; `max` is
    /// `|E| − b(G)` (or `None` when the graph is disconnected).
    Infeasible { requested: usize, max: Option<usize> },
}

/// DFS orientation of the non-bridge edges: tree edges away from the root,
/// other edges towards the ancestor. Bridges get `None`.
fn dfs_orientation(g: &MixedGraph, is_bridge: &[bool]) -> Vec<Option<(usize, usize)>> {
    let n = g.n();
    let adj = g.undirected_adjacency();
    let mut out = vec![None; g.num_edges()];
    let mut disc = vec![usize::MAX; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        time += 1;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (x, ref mut pos)) = stack.last_mut() {
            if *pos == adj[x].len() {
                stack.pop();
                continue;
            }
            let (y, er) = adj[x][*pos];
            *pos += 1;
            let crate::graph::ElementRef::Edge(ei) = er else { continue };
            if out[ei].is_some() || is_bridge[ei] {
                if disc[y] == usize::MAX {
                    disc[y] = time;
                    time += 1;
                    stack.push((y, 0));
                }
                continue;
            }
            if disc[y] == usize::MAX {
                out[ei] = Some((x, y));
                disc[y] = time;
                time += 1;
                stack.push((y, 0));
            } else {
                // y is an ancestor of x, or a finished vertex reached again
                // through a parallel element; either way point x into it
                out[ei] = Some((x, y));
            }
        }
    }
    out
}

/// A strong partial orientation of the graph `g` with exactly `k` oriented
/// edges, if `g` is connected and `k ≤ |E| − b(G)`. The first `k` non-bridge
/// edges (by index) are oriented along a DFS orientation.
pub fn robbins_partial_orientation(g: &MixedGraph, k: usize) -> Result<RobbinsOutcome> {
    if !g.is_graph() {
        return Err(Error::Precondition("expected an undirected graph".into()));
    }
    if !g.is_connected() {
        return Ok(RobbinsOutcome::Infeasible { requested: k, max: None });
    }
    let br = bridges(g);
    let max = g.num_edges() - br.len();
    if k > max {
        return Ok(RobbinsOutcome::Infeasible { requested: k, max: Some(max) });
    }
    let mut is_bridge = vec![false; g.num_edges()];
    for b in br {
        is_bridge[b] = true;
    }
    let orient = dfs_orientation(g, &is_bridge);
    let mut left = k;
    let decisions = orient
        .iter()
        .map(|o| match o {
            Some((t, h)) if left > 0 => {
                left -= 1;
                EdgeDecision::Orient { tail: *t, head: *h }
            }
            _ => EdgeDecision::Keep,
        })
        .collect();
    Ok(RobbinsOutcome::Feasible(PartialOrientation::new(g.clone(), decisions)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_strong;

    #[test]
    fn cycle_fully_oriented() {
        let c4 = MixedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let RobbinsOutcome::Feasible(po) = robbins_partial_orientation(&c4, 4).unwrap() else {
            panic!("C4 has a strong orientation")
        };
        assert_eq!(po.oriented_count(), 4);
        assert!(is_strong(&po.realize()));
    }

    #[test]
    fn bridge_limits_orientation() {
        let g = MixedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
            .unwrap();
        assert_eq!(
            robbins_partial_orientation(&g, 7).unwrap(),
            RobbinsOutcome::Infeasible { requested: 7, max: Some(6) }
        );
        let RobbinsOutcome::Feasible(po) = robbins_partial_orientation(&g, 6).unwrap() else {
            panic!("six edges can be oriented")
        };
        assert!(is_strong(&po.realize()));
    }

    #[test]
    fn zero_orients_nothing() {
        let g = MixedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let RobbinsOutcome::Feasible(po) = robbins_partial_orientation(&g, 0).unwrap() else {
            panic!("connected")
        };
        assert_eq!(po.realize(), g);
    }
}

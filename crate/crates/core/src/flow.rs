//! Integral max-flow (Dinic) and min-cost flow (successive shortest paths with
//! potentials), plus a network type with lower bounds.

use std::collections::VecDeque;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Weight;

pub const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
struct ResArc {
    to: usize,
    cap: i64,
    orig: i64,
    cost: i64,
}

/// Residual graph with paired forward/backward arcs. Arc `2i` is the forward
/// copy of the i-th added arc and `2i+1` its reverse.
#[derive(Debug, Clone)]
pub struct FlowGraph {
    adj: Vec<Vec<usize>>,
    arcs: Vec<ResArc>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowGraph {
    pub fn new(nodes: usize) -> Self {
        FlowGraph {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.level.push(0);
        self.iter.push(0);
        self.adj.len() - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        self.add_arc_with_cost(from, to, cap, 0)
    }

    pub fn add_arc_with_cost(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let id = self.arcs.len() / 2;
        self.adj[from].push(self.arcs.len());
        self.arcs.push(ResArc { to, cap, orig: cap, cost });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(ResArc { to: from, cap: 0, orig: 0, cost: -cost });
        id
    }

    /// Restores all capacities, discarding any flow.
    pub fn reset(&mut self) {
        for a in &mut self.arcs {
            a.cap = a.orig;
        }
    }

    pub fn set_capacity(&mut self, id: usize, cap: i64) {
        self.arcs[2 * id].orig = cap;
        self.arcs[2 * id].cap = cap;
        self.arcs[2 * id + 1].orig = 0;
        self.arcs[2 * id + 1].cap = 0;
    }

    /// Flow currently carried by the i-th added arc.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[2 * id + 1].cap - self.arcs[2 * id + 1].orig
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &ai in &self.adj[x] {
                let a = &self.arcs[ai];
                if a.cap > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[x] + 1;
                    q.push_back(a.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, x: usize, t: usize, pushed: i64) -> i64 {
        if x == t {
            return pushed;
        }
        while self.iter[x] < self.adj[x].len() {
            let ai = self.adj[x][self.iter[x]];
            let (to, cap) = (self.arcs[ai].to, self.arcs[ai].cap);
            if cap > 0 && self.level[to] == self.level[x] + 1 {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.arcs[ai].cap -= d;
                    self.arcs[ai ^ 1].cap += d;
                    return d;
                }
            }
            self.iter[x] += 1;
        }
        0
    }

    /// Augments from `s` to `t` until the flow value reaches `limit` or no
    /// augmenting path remains. Works on top of any existing flow.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit && self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let d = self.dfs(s, t, limit - total);
                if d == 0 {
                    break;
                }
                total += d;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual graph.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &ai in &self.adj[x] {
                let a = &self.arcs[ai];
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }

    /// Nodes that can reach `t` in the residual graph.
    pub fn sink_side(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(x) = stack.pop() {
            for &ai in &self.adj[x] {
                // residual arc y -> x exists iff the paired arc has capacity
                let back = &self.arcs[ai ^ 1];
                let y = self.arcs[ai].to;
                if back.cap > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Successive shortest paths from `s` to `t`, pushing at most `limit`
    /// units. Costs must be non-negative on arcs with capacity. Returns
    /// (flow, cost).
    pub fn min_cost_flow(&mut self, s: usize, t: usize, limit: i64) -> (i64, i64) {
        let n = self.nodes();
        let mut pot = vec![0i64; n];
        let mut flow = 0;
        let mut cost = 0;
        while flow < limit {
            let mut dist = vec![INF; n];
            let mut prev = vec![usize::MAX; n];
            let mut done = vec![false; n];
            dist[s] = 0;
            // dense Dijkstra; networks here are small
            loop {
                let mut x = usize::MAX;
                for v in 0..n {
                    if !done[v] && dist[v] < INF && (x == usize::MAX || dist[v] < dist[x]) {
                        x = v;
                    }
                }
                if x == usize::MAX {
                    break;
                }
                done[x] = true;
                for &ai in &self.adj[x] {
                    let a = &self.arcs[ai];
                    if a.cap > 0 {
                        let nd = dist[x] + a.cost + pot[x] - pot[a.to];
                        if nd < dist[a.to] {
                            dist[a.to] = nd;
                            prev[a.to] = ai;
                        }
                    }
                }
            }
            if dist[t] >= INF {
                break;
            }
            for v in 0..n {
                if dist[v] < INF {
                    pot[v] += dist[v];
                }
            }
            let mut push = limit - flow;
            let mut v = t;
            while v != s {
                let ai = prev[v];
                push = push.min(self.arcs[ai].cap);
                v = self.arcs[ai ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let ai = prev[v];
                self.arcs[ai].cap -= push;
                self.arcs[ai ^ 1].cap += push;
                cost += push * self.arcs[ai].cost;
                v = self.arcs[ai ^ 1].to;
            }
            flow += push;
        }
        (flow, cost)
    }
}

/// One arc of a [`FlowNetwork`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub lower: i64,
    pub capacity: i64,
    pub cost: Weight,
}

/// A flow network with lower bounds, capacities and non-negative rational costs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowNetwork {
    pub nodes: usize,
    pub arcs: Vec<FlowArc>,
    pub source: usize,
    pub sink: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSolution {
    pub value: i64,
    pub cost: Weight,
    pub flow: Vec<i64>,
}

/// Outcome of a flow computation: lower bounds may make a network infeasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowOutcome {
    Feasible(FlowSolution),
    Infeasible,
}

impl FlowOutcome {
    pub fn feasible(self) -> Option<FlowSolution> {
        match self {
            FlowOutcome::Feasible(s) => Some(s),
            FlowOutcome::Infeasible => None,
        }
    }
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes {
            return Err(Error::Precondition("source or sink out of range".into()));
        }
        if source == sink {
            return Err(Error::Precondition("source equals sink".into()));
        }
        Ok(FlowNetwork { nodes, arcs: Vec::new(), source, sink })
    }

    pub fn add_arc(
        &mut self,
        from: usize,
        to: usize,
        lower: i64,
        capacity: i64,
        cost: Weight,
    ) -> Result<usize> {
        if from >= self.nodes || to >= self.nodes {
            return Err(Error::Precondition(format!("arc {from}->{to} out of range")));
        }
        if lower < 0 || lower > capacity {
            return Err(Error::Precondition(format!(
                "bounds {lower}..{capacity} invalid on arc {from}->{to}"
            )));
        }
        if cost < Weight::zero() {
            return Err(Error::Precondition("negative arc cost".into()));
        }
        self.arcs.push(FlowArc { from, to, lower, capacity, cost });
        Ok(self.arcs.len() - 1)
    }

    fn cost_scale(&self) -> i64 {
        self.arcs.iter().fold(1i64, |acc, a| acc.lcm(a.cost.denom()))
    }

    /// Builds the residual graph for flow above lower bounds, with super
    /// terminals appended and a `sink -> source` return arc.
    fn transformed(&self, scale: i64) -> (FlowGraph, usize, usize, i64, usize) {
        let mut g = FlowGraph::new(self.nodes + 2);
        let (ss, tt) = (self.nodes, self.nodes + 1);
        let mut excess = vec![0i64; self.nodes];
        for a in &self.arcs {
            let c = (a.cost * scale).to_integer();
            g.add_arc_with_cost(a.from, a.to, a.capacity - a.lower, c);
            excess[a.to] += a.lower;
            excess[a.from] -= a.lower;
        }
        let ret = g.add_arc(self.sink, self.source, INF);
        let mut need = 0;
        for (v, &e) in excess.iter().enumerate() {
            if e > 0 {
                g.add_arc(ss, v, e);
                need += e;
            } else if e < 0 {
                g.add_arc(v, tt, -e);
            }
        }
        (g, ss, tt, need, ret)
    }

    fn read_flow(&self, g: &FlowGraph) -> FlowSolution {
        let flow: Vec<i64> = self
            .arcs
            .iter()
            .enumerate()
            .map(|(i, a)| g.flow(i) + a.lower)
            .collect();
        let mut cost = Weight::zero();
        for (a, &f) in self.arcs.iter().zip(&flow) {
            cost += a.cost * f;
        }
        let value = self
            .arcs
            .iter()
            .zip(&flow)
            .map(|(a, &f)| {
                let mut d = 0;
                if a.from == self.source {
                    d += f;
                }
                if a.to == self.source {
                    d -= f;
                }
                d
            })
            .sum();
        FlowSolution { value, cost, flow }
    }

    /// Maximum (s,t)-flow respecting lower bounds.
    pub fn max_flow(&self) -> FlowOutcome {
        let (mut g, ss, tt, need, ret) = self.transformed(1);
        if g.max_flow(ss, tt, INF) < need {
            return FlowOutcome::Infeasible;
        }
        // Freeze the circulation through the return arc: those units are
        // already source-to-sink flow on the original arcs.
        g.set_capacity(ret, 0);
        g.max_flow(self.source, self.sink, INF);
        FlowOutcome::Feasible(self.read_flow(&g))
    }

    /// A feasible (s,t)-flow of minimum total cost, of any value.
    pub fn min_cost_feasible_flow(&self) -> FlowOutcome {
        let scale = self.cost_scale();
        let (mut g, ss, tt, need, _) = self.transformed(scale);
        let (f, _) = g.min_cost_flow(ss, tt, INF);
        if f < need {
            return FlowOutcome::Infeasible;
        }
        FlowOutcome::Feasible(self.read_flow(&g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: i64) -> Weight {
        Weight::from_integer(x)
    }

    #[test]
    fn parallel_unit_arcs() {
        let mut n = FlowNetwork::new(2, 0, 1).unwrap();
        n.add_arc(0, 1, 0, 1, w(0)).unwrap();
        n.add_arc(0, 1, 0, 1, w(0)).unwrap();
        assert_eq!(n.max_flow().feasible().unwrap().value, 2);
    }

    #[test]
    fn lower_bound_above_capacity_rejected() {
        let mut n = FlowNetwork::new(2, 0, 1).unwrap();
        assert!(n.add_arc(0, 1, 2, 1, w(0)).is_err());
    }

    #[test]
    fn infeasible_lower_bounds_reported() {
        // s->a forced to carry 2 but a->t can take only 1
        let mut n = FlowNetwork::new(3, 0, 2).unwrap();
        n.add_arc(0, 1, 2, 5, w(0)).unwrap();
        n.add_arc(1, 2, 0, 1, w(0)).unwrap();
        assert_eq!(n.max_flow(), FlowOutcome::Infeasible);
        assert_eq!(n.min_cost_feasible_flow(), FlowOutcome::Infeasible);
    }

    #[test]
    fn max_flow_with_lower_bound_and_return() {
        let mut n = FlowNetwork::new(4, 0, 3).unwrap();
        n.add_arc(0, 1, 1, 2, w(0)).unwrap();
        n.add_arc(0, 2, 0, 2, w(0)).unwrap();
        n.add_arc(1, 3, 0, 1, w(0)).unwrap();
        n.add_arc(2, 3, 0, 3, w(0)).unwrap();
        let sol = n.max_flow().feasible().unwrap();
        assert_eq!(sol.value, 3);
        assert!(sol.flow[0] >= 1);
    }

    #[test]
    fn min_cost_prefers_cheap_route() {
        let mut n = FlowNetwork::new(4, 0, 3).unwrap();
        n.add_arc(0, 1, 2, 2, w(0)).unwrap();
        n.add_arc(1, 3, 0, 1, Weight::new(1, 2)).unwrap();
        n.add_arc(1, 2, 0, 2, w(1)).unwrap();
        n.add_arc(2, 3, 0, 2, w(1)).unwrap();
        let sol = n.min_cost_feasible_flow().feasible().unwrap();
        assert_eq!(sol.cost, Weight::new(5, 2));
        assert_eq!(sol.value, 2);
    }

    #[test]
    fn zero_flow_is_cheapest_without_lower_bounds() {
        let mut n = FlowNetwork::new(2, 0, 1).unwrap();
        n.add_arc(0, 1, 0, 3, w(2)).unwrap();
        let sol = n.min_cost_feasible_flow().feasible().unwrap();
        assert_eq!(sol.cost, w(0));
        assert_eq!(sol.value, 0);
    }

    #[test]
    fn residual_sides() {
        let mut g = FlowGraph::new(3);
        g.add_arc(0, 1, 1);
        g.add_arc(1, 2, 5);
        assert_eq!(g.max_flow(0, 2, INF), 1);
        assert_eq!(g.source_side(0), vec![true, false, false]);
        assert_eq!(g.sink_side(2), vec![false, true, true]);
        g.reset();
        assert_eq!(g.max_flow(0, 2, INF), 1);
    }
}

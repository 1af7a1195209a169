//! Cut-guided exhaustive search over per-element choices.
//!
//! Every element of a search space picks one of its choices; a choice adds
//! pieces (edges or arcs) to a fixed base graph and carries a cost. The search
//! looks for a cheapest assignment whose realized graph satisfies a
//! connectivity oracle. Separations returned by the oracle become cut
//! constraints that prune the remaining search and feed a packing lower bound.
//!
//! Assignments are explored depth-first in element order, trying each
//! element's choices in the listed order, so the reported witness is the first
//! optimal assignment in that order.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::Zero;

use crate::connectivity::Separation;
use crate::error::{Error, Result};
use crate::graph::{MixedGraph, VertexId};
use crate::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Piece {
    Edge(VertexId, VertexId),
    Arc(VertexId, VertexId),
}

impl Piece {
    fn gain(&self, sep: &Separation) -> usize {
        match *self {
            Piece::Edge(u, v) => sep.edge_gain(u, v),
            Piece::Arc(t, h) => sep.arc_gain(t, h),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Choice {
    pub pieces: Vec<Piece>,
    pub cost: Weight,
}

impl Choice {
    pub fn new(pieces: Vec<Piece>, cost: Weight) -> Self {
        Choice { pieces, cost }
    }

    pub fn free(pieces: Vec<Piece>) -> Self {
        Choice { pieces, cost: Weight::zero() }
    }
}

/// A fixed base graph plus one list of choices per element.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    pub base: MixedGraph,
    pub elements: Vec<Vec<Choice>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_elements: usize,
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_elements: 600, max_nodes: 200_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Cheapest assignment (choice index per element) and its cost.
    Optimal { cost: Weight, choices: Vec<usize> },
    /// No assignment satisfies the oracle.
    Infeasible,
    /// Every satisfying assignment costs more than the budget.
    OverBudget,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub oracle_calls: u64,
}

struct Term {
    elem: usize,
    deltas: Vec<i64>,
    max_delta: i64,
    free: i64,
    extra: i64,
    // cheapest extra cost per unit of extra gain, as a fraction
    ratio: f64,
}

struct Constraint {
    need: i64,
    cur: i64,
    rem: i64,
    terms: Vec<Term>,
}

struct Engine<'a, F: FnMut(&MixedGraph) -> Vec<Separation>> {
    space: &'a SearchSpace,
    costs: Vec<Vec<i64>>,
    min_cost: Vec<i64>,
    suffix_min: Vec<i64>,
    oracle: F,
    cons: Vec<Constraint>,
    seen: HashSet<Separation>,
    elem_terms: Vec<Vec<(usize, usize)>>,
    assign: Vec<usize>,
    violated: usize,
    nodes: u64,
    oracle_calls: u64,
    max_nodes: u64,
    probe: bool,
    stamp: Vec<u64>,
    stamp_id: u64,
    best: Option<(i64, Vec<usize>)>,
}

impl<'a, F: FnMut(&MixedGraph) -> Vec<Separation>> Engine<'a, F> {
    fn realize(&self, depth: usize, relaxed: bool) -> MixedGraph {
        let mut g = self.space.base.clone();
        let add = |g: &mut MixedGraph, p: &Piece| match *p {
            Piece::Edge(u, v) => {
                g.add_edge(u, v).expect("valid piece");
            }
            Piece::Arc(t, h) => {
                g.add_arc(t, h).expect("valid piece");
            }
        };
        for (e, choices) in self.space.elements.iter().enumerate() {
            if e < depth {
                for p in &choices[self.assign[e]].pieces {
                    add(&mut g, p);
                }
            } else if relaxed {
                // union of all choices, as a multiset maximum
                let mut most: Vec<(Piece, usize)> = Vec::new();
                for c in choices {
                    let mut counts: Vec<(Piece, usize)> = Vec::new();
                    for p in &c.pieces {
                        match counts.iter_mut().find(|(q, _)| q == p) {
                            Some((_, k)) => *k += 1,
                            None => counts.push((*p, 1)),
                        }
                    }
                    for (p, k) in counts {
                        match most.iter_mut().find(|(q, _)| *q == p) {
                            Some((_, m)) => *m = (*m).max(k),
                            None => most.push((p, k)),
                        }
                    }
                }
                for (p, k) in most {
                    for _ in 0..k {
                        add(&mut g, &p);
                    }
                }
            }
        }
        g
    }

    /// Adds a constraint; returns whether it is violated at `depth`.
    fn add_constraint(&mut self, sep: Separation, depth: usize) -> bool {
        if !self.seen.insert(sep.clone()) {
            return false;
        }
        let need = sep.need as i64;
        let mut cur = sep.supply(&self.space.base) as i64;
        let mut rem = 0;
        let mut terms = Vec::new();
        for (e, choices) in self.space.elements.iter().enumerate() {
            let gains: Vec<i64> = choices
                .iter()
                .map(|c| (c.pieces.iter().map(|p| p.gain(&sep)).sum::<usize>() as i64).min(need))
                .collect();
            let lo = *gains.iter().min().unwrap_or(&0);
            let hi = *gains.iter().max().unwrap_or(&0);
            cur += lo;
            if hi == lo {
                continue;
            }
            let deltas: Vec<i64> = gains.iter().map(|g| g - lo).collect();
            let free = choices
                .iter()
                .enumerate()
                .filter(|(j, _)| self.costs[e][*j] == self.min_cost[e])
                .map(|(j, _)| deltas[j])
                .max()
                .unwrap_or(0);
            let mut ratio = f64::INFINITY;
            for j in 0..choices.len() {
                if deltas[j] > free {
                    let r = (self.costs[e][j] - self.min_cost[e]) as f64 / (deltas[j] - free) as f64;
                    ratio = ratio.min(r);
                }
            }
            terms.push(Term { elem: e, max_delta: hi - lo, free, extra: hi - lo - free, ratio, deltas });
        }
        for t in &terms {
            if t.elem < depth {
                cur += t.deltas[self.assign[t.elem]];
            } else {
                rem += t.max_delta;
            }
        }
        terms.sort_by(|a, b| a.ratio.partial_cmp(&b.ratio).unwrap().then(a.elem.cmp(&b.elem)));
        let ci = self.cons.len();
        for (ti, t) in terms.iter().enumerate() {
            self.elem_terms[t.elem].push((ci, ti));
        }
        let violated = cur + rem < need;
        if violated {
            self.violated += 1;
        }
        self.cons.push(Constraint { need, cur, rem, terms });
        violated
    }

    fn assign(&mut self, e: usize, j: usize) {
        self.assign[e] = j;
        for &(ci, ti) in &self.elem_terms[e] {
            let c = &mut self.cons[ci];
            let t = &c.terms[ti];
            let was = c.cur + c.rem < c.need;
            c.cur += t.deltas[j];
            c.rem -= t.max_delta;
            let now = c.cur + c.rem < c.need;
            if now && !was {
                self.violated += 1;
            }
        }
    }

    fn unassign(&mut self, e: usize) {
        let j = self.assign[e];
        for &(ci, ti) in &self.elem_terms[e] {
            let c = &mut self.cons[ci];
            let t = &c.terms[ti];
            let was = c.cur + c.rem < c.need;
            c.cur -= t.deltas[j];
            c.rem += t.max_delta;
            let now = c.cur + c.rem < c.need;
            if was && !now {
                self.violated -= 1;
            }
        }
    }

    /// Lower bound on the extra cost (above per-element minimum costs) still
    /// to be paid by elements `depth..`.
    fn lower_bound(&mut self, depth: usize) -> i64 {
        let mut cands: Vec<(i64, usize)> = Vec::new();
        for (ci, c) in self.cons.iter().enumerate() {
            let deficit = c.need - c.cur;
            if deficit <= 0 {
                continue;
            }
            let mut left = deficit;
            for t in &c.terms {
                if t.elem >= depth {
                    left -= t.free;
                }
            }
            if left <= 0 {
                continue;
            }
            let mut total = 0.0;
            for t in &c.terms {
                if t.elem < depth || t.extra == 0 {
                    continue;
                }
                let take = left.min(t.extra);
                total += take as f64 * t.ratio;
                left -= take;
                if left == 0 {
                    break;
                }
            }
            let lb = (total - 1e-6).ceil().max(0.0) as i64;
            if lb > 0 {
                cands.push((lb, ci));
            }
        }
        if cands.is_empty() {
            return 0;
        }
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        self.stamp_id += 1;
        let id = self.stamp_id;
        let mut sum = 0;
        for (lb, ci) in cands {
            let c = &self.cons[ci];
            let clash = c
                .terms
                .iter()
                .any(|t| t.elem >= depth && t.extra > 0 && self.stamp[t.elem] == id);
            if clash {
                continue;
            }
            for t in &c.terms {
                if t.elem >= depth && t.extra > 0 {
                    self.stamp[t.elem] = id;
                }
            }
            sum += lb;
        }
        sum
    }

    fn consult(&mut self, g: &MixedGraph, depth: usize) -> bool {
        self.oracle_calls += 1;
        let seps = (self.oracle)(g);
        if seps.is_empty() {
            return true;
        }
        for s in seps {
            self.add_constraint(s, depth);
        }
        false
    }

    /// Depth-first search under `limit`. Returns true when a solution within
    /// the limit has been recorded (first-found mode) or the subtree is done.
    fn dfs(&mut self, depth: usize, cost: i64, limit: i64, first_found: bool, next: &mut i64) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::SearchLimit(self.nodes));
        }
        if self.violated > 0 {
            return Ok(false);
        }
        let m = self.space.elements.len();
        let bound = cost + self.suffix_min[depth] + self.lower_bound(depth);
        let over = if first_found { bound > limit } else { bound > limit || self.best.as_ref().is_some_and(|b| bound > b.0) };
        if over {
            *next = (*next).min(bound);
            return Ok(false);
        }
        if depth == m {
            let g = self.realize(m, false);
            if self.consult(&g, m) {
                let better = self.best.as_ref().is_none_or(|b| cost < b.0);
                if better {
                    self.best = Some((cost, self.assign.clone()));
                }
                return Ok(first_found);
            }
            return Ok(false);
        }
        if self.probe && depth > 0 {
            // the oracle is monotone, so a failing relaxation condemns the subtree
            let g = self.realize(depth, true);
            if !self.consult(&g, depth) {
                return Ok(false);
            }
        }
        for j in 0..self.space.elements[depth].len() {
            self.assign(depth, j);
            let c = cost + self.costs[depth][j] - self.min_cost[depth];
            let done = self.dfs(depth + 1, c, limit, first_found, next)?;
            self.unassign(depth);
            if done {
                return Ok(true);
            }
            // constraints learned below may already condemn this prefix
            if self.violated > 0 {
                return Ok(false);
            }
        }
        Ok(false)
    }
}

/// Finds a cheapest assignment satisfying the oracle. The oracle receives a
/// realized graph and returns separations certifying failure (empty means
/// the graph is acceptable); every separation must be a valid demand for all
/// acceptable graphs, and acceptance must be monotone under adding pieces.
/// Costs must be non-negative. With a `budget`, the search
/// stops as soon as it proves that no solution of cost at most the budget
/// exists.
pub fn minimize<F>(
    space: &SearchSpace,
    oracle: F,
    budget: Option<Weight>,
    limits: SearchLimits,
) -> Result<SearchReport>
where
    F: FnMut(&MixedGraph) -> Vec<Separation>,
{
    let m = space.elements.len();
    if m > limits.max_elements {
        return Err(Error::SizeLimit(format!(
            "{m} search elements exceed the limit of {}",
            limits.max_elements
        )));
    }
    let mut scale: i64 = 1;
    for c in space.elements.iter().flatten() {
        if c.cost < Weight::zero() {
            return Err(Error::Precondition("negative choice cost".into()));
        }
        scale = scale.lcm(c.cost.denom());
    }
    if let Some(b) = budget {
        scale = scale.lcm(b.denom());
    }
    for (e, choices) in space.elements.iter().enumerate() {
        if choices.is_empty() {
            return Err(Error::Precondition(format!("element {e} has no choices")));
        }
    }
    let costs: Vec<Vec<i64>> = space
        .elements
        .iter()
        .map(|cs| cs.iter().map(|c| (c.cost * scale).to_integer()).collect())
        .collect();
    let min_cost: Vec<i64> = costs.iter().map(|c| *c.iter().min().unwrap()).collect();
    let mut suffix_min = vec![0; m + 1];
    for e in (0..m).rev() {
        suffix_min[e] = suffix_min[e + 1] + min_cost[e];
    }
    let budget_scaled = budget.map(|b| (b * scale).floor().to_integer());
    let paid_values: HashSet<i64> = costs
        .iter()
        .zip(&min_cost)
        .flat_map(|(cs, &mc)| cs.iter().map(move |c| c - mc))
        .filter(|&c| c > 0)
        .collect();
    let unit_like = paid_values.len() <= 1;

    let mut eng = Engine {
        space,
        costs,
        min_cost,
        suffix_min,
        oracle,
        cons: Vec::new(),
        seen: HashSet::new(),
        elem_terms: vec![Vec::new(); m],
        assign: vec![0; m],
        violated: 0,
        nodes: 0,
        oracle_calls: 0,
        max_nodes: limits.max_nodes,
        probe: true,
        stamp: vec![0; m],
        stamp_id: 0,
        best: None,
    };

    // The most permissive completion: if it fails, nothing can succeed.
    let relaxed = eng.realize(0, true);
    if !eng.consult(&relaxed, 0) {
        return Ok(SearchReport { outcome: SearchOutcome::Infeasible, nodes: eng.nodes, oracle_calls: eng.oracle_calls });
    }

    let cap = budget_scaled.unwrap_or(i64::MAX / 4);
    let mut over_budget = false;
    if unit_like {
        // iterative deepening on the cost threshold
        let mut limit = eng.suffix_min[0] + eng.lower_bound(0);
        loop {
            if limit > cap {
                over_budget = true;
                break;
            }
            let mut next = i64::MAX;
            eng.best = None;
            eng.dfs(0, 0, limit, true, &mut next)?;
            if eng.best.is_some() || next == i64::MAX {
                break;
            }
            limit = next.max(limit + 1);
        }
    } else {
        let mut next = i64::MAX;
        eng.dfs(0, 0, cap, false, &mut next)?;
        over_budget = eng.best.is_none() && next != i64::MAX;
    }
    let outcome = match eng.best.take() {
        Some((_, choices)) => {
            let total: i64 = choices.iter().enumerate().map(|(e, &j)| eng.costs[e][j]).sum();
            SearchOutcome::Optimal { cost: Weight::new(total, scale), choices }
        }
        None if over_budget => SearchOutcome::OverBudget,
        None => SearchOutcome::Infeasible,
    };
    Ok(SearchReport { outcome, nodes: eng.nodes, oracle_calls: eng.oracle_calls })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::Target;

    fn unit(x: i64) -> Weight {
        Weight::from_integer(x)
    }

    /// Doubling search on a cycle: 3-edge-connectivity needs n-1 doublings.
    #[test]
    fn cycle_doubling() {
        let n = 5;
        let base = MixedGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap();
        let elements = base
            .edges()
            .iter()
            .map(|e| vec![Choice::new(vec![Piece::Edge(e.u, e.v)], unit(1)), Choice::free(vec![])])
            .collect();
        let space = SearchSpace { base, elements };
        let t = Target::ArcStrong(3);
        let rep = minimize(&space, |g| t.violations(g, 8), None, SearchLimits::default()).unwrap();
        match rep.outcome {
            SearchOutcome::Optimal { cost, choices } => {
                assert_eq!(cost, unit(4));
                // first optimal assignment pays for the lowest indices
                assert_eq!(choices, vec![0, 0, 0, 0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_and_budget() {
        // a path can never become 2-edge-connected by orienting its edges
        let base = MixedGraph::new(3);
        let elements = vec![
            vec![Choice::free(vec![Piece::Arc(0, 1)]), Choice::free(vec![Piece::Arc(1, 0)])],
            vec![Choice::free(vec![Piece::Arc(1, 2)]), Choice::free(vec![Piece::Arc(2, 1)])],
        ];
        let space = SearchSpace { base, elements };
        let t = Target::ArcStrong(1);
        let rep = minimize(&space, |g| t.violations(g, 8), None, SearchLimits::default()).unwrap();
        assert_eq!(rep.outcome, SearchOutcome::Infeasible);

        let n = 4;
        let base = MixedGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap();
        let elements = base
            .edges()
            .iter()
            .map(|e| vec![Choice::new(vec![Piece::Edge(e.u, e.v)], unit(1)), Choice::free(vec![])])
            .collect();
        let space = SearchSpace { base, elements };
        let rep = minimize(&space, t_three, Some(unit(2)), SearchLimits::default()).unwrap();
        assert_eq!(rep.outcome, SearchOutcome::OverBudget);
    }

    fn t_three(g: &MixedGraph) -> Vec<Separation> {
        Target::ArcStrong(3).violations(g, 4)
    }

    #[test]
    fn weighted_branch_and_bound() {
        // triangle with weights 1, 2, 3: doubling to 3-edge-connectivity
        let base = MixedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let w = [Weight::new(1, 1), Weight::new(2, 1), Weight::new(3, 1)];
        let elements = base
            .edges()
            .iter()
            .zip(w)
            .map(|(e, w)| vec![Choice::new(vec![Piece::Edge(e.u, e.v)], w), Choice::free(vec![])])
            .collect();
        let space = SearchSpace { base, elements };
        let t = Target::ArcStrong(3);
        let rep = minimize(&space, |g| t.violations(g, 8), None, SearchLimits::default()).unwrap();
        assert_eq!(rep.outcome, SearchOutcome::Optimal { cost: unit(3), choices: vec![0, 0, 1] });
    }

    #[test]
    fn size_limit_reported() {
        let space = SearchSpace { base: MixedGraph::new(2), elements: vec![vec![Choice::free(vec![])]; 5] };
        let limits = SearchLimits { max_elements: 4, max_nodes: 10 };
        assert!(matches!(minimize(&space, |_| Vec::new(), None, limits), Err(Error::SizeLimit(_))));
    }
}

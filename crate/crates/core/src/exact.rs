//! Exact solvers for the desk-scale versions of the reversal, deorientation,
//! doubling and partial-orientation problems, plus brute-force referees for
//! vertex cover, MAX-2-SAT and orientation problems.
//!
//! All graph problems run on the cut-guided search of [`crate::search`]:
//! subsets are explored by increasing cost, and violated cuts prune the rest.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::connectivity::{check_kstrong_orientation_condition, Separation, Target};
use crate::error::{Error, Result};
use crate::graph::{EdgeDecision, MixedGraph, PartialOrientation, VertexId};
use crate::reductions::sat::SatInstance;
use crate::search::{minimize, Choice, Piece, SearchLimits, SearchOutcome, SearchSpace};
use crate::Weight;

pub use crate::connectivity::Requirement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Optimal,
    Infeasible,
    /// A budget was given and every solution exceeds it.
    OverBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult<W> {
    pub status: Status,
    pub optimum: Option<Weight>,
    pub witness: Option<W>,
    pub nodes_explored: u64,
}

impl<W> SolveResult<W> {
    fn infeasible(nodes: u64) -> Self {
        SolveResult { status: Status::Infeasible, optimum: None, witness: None, nodes_explored: nodes }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == Status::Optimal
    }

    /// Whether a solution of cost at most `budget` exists.
    pub fn within(&self, budget: Weight) -> bool {
        self.optimum.is_some_and(|o| o <= budget)
    }

    fn map<V>(self, f: impl FnOnce(W) -> V) -> SolveResult<V> {
        SolveResult {
            status: self.status,
            optimum: self.optimum,
            witness: self.witness.map(f),
            nodes_explored: self.nodes_explored,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Stop once it is proved that nothing of cost at most the budget exists.
    pub budget: Option<Weight>,
    pub limits: SearchLimits,
    /// Separations requested from the oracle per call.
    pub cuts_per_call: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: None, limits: SearchLimits::default(), cuts_per_call: 6 }
    }
}

impl SolveOptions {
    pub fn with_budget(budget: Weight) -> Self {
        SolveOptions { budget: Some(budget), ..Default::default() }
    }
}

/// Largest `k` of a vertex-connectivity component of the target (0 if none).
fn vertex_floor(t: &Target) -> usize {
    match t {
        Target::Strong(k) => *k,
        Target::All(ts) => ts.iter().map(vertex_floor).max().unwrap_or(0),
        _ => 0,
    }
}

/// Whether the target only depends on which ordered vertex pairs are adjacent
/// (and reachability), so that parallel elements are irrelevant.
fn adjacency_only(t: &Target) -> bool {
    match t {
        Target::Strong(_) => true,
        Target::ArcStrong(1) => true,
        Target::All(ts) => ts.iter().all(adjacency_only),
        _ => false,
    }
}

fn run(
    space: &SearchSpace,
    target: &Target,
    opts: &SolveOptions,
) -> Result<SolveResult<Vec<usize>>> {
    let per_call = opts.cuts_per_call;
    let oracle = |g: &MixedGraph| -> Vec<Separation> { target.violations(g, per_call) };
    let rep = minimize(space, oracle, opts.budget, opts.limits)?;
    Ok(match rep.outcome {
        SearchOutcome::Optimal { cost, choices } => SolveResult {
            status: Status::Optimal,
            optimum: Some(cost),
            witness: Some(choices),
            nodes_explored: rep.nodes,
        },
        SearchOutcome::Infeasible => SolveResult::infeasible(rep.nodes),
        SearchOutcome::OverBudget => SolveResult {
            status: Status::OverBudget,
            optimum: None,
            witness: None,
            nodes_explored: rep.nodes,
        },
    })
}

fn require_digraph(d: &MixedGraph) -> Result<()> {
    if !d.is_digraph() {
        return Err(Error::Precondition("expected a digraph (no undirected edges)".into()));
    }
    Ok(())
}

fn require_graph(g: &MixedGraph) -> Result<()> {
    if !g.is_graph() {
        return Err(Error::Precondition("expected an undirected graph (no arcs)".into()));
    }
    Ok(())
}

/// Minimum number of arc reversals making `d` satisfy `target`. The witness
/// lists the reversed arcs.
pub fn min_reversals(
    d: &MixedGraph,
    target: &Target,
    opts: &SolveOptions,
) -> Result<SolveResult<Vec<usize>>> {
    min_reversals_fixing(d, target, &[], opts)
}

/// Like [`min_reversals`], but the arcs in `fixed` may not be reversed.
pub fn min_reversals_fixing(
    d: &MixedGraph,
    target: &Target,
    fixed: &[usize],
    opts: &SolveOptions,
) -> Result<SolveResult<Vec<usize>>> {
    require_digraph(d)?;
    if let Some(&i) = fixed.iter().find(|&&i| i >= d.num_arcs()) {
        return Err(Error::ElementOutOfRange { kind: "arc", index: i, len: d.num_arcs() });
    }
    if d.n() <= vertex_floor(target) {
        return Ok(SolveResult::infeasible(0));
    }
    if *target == Target::Strong(2) && !check_kstrong_orientation_condition(d, 2) {
        return Ok(SolveResult::infeasible(0));
    }
    // Reversing one arc of a digon never helps a pure adjacency target.
    let mut frozen = if adjacency_only(target) { d.arcs_in_digons() } else { vec![false; d.num_arcs()] };
    for &i in fixed {
        frozen[i] = true;
    }
    let mut base = MixedGraph::new(d.n());
    let mut cand = Vec::new();
    let mut elements = Vec::new();
    for (i, a) in d.arcs().iter().enumerate() {
        if frozen[i] {
            base.add_arc(a.tail, a.head)?;
        } else {
            cand.push(i);
            elements.push(vec![
                Choice::new(vec![Piece::Arc(a.head, a.tail)], Weight::one()),
                Choice::free(vec![Piece::Arc(a.tail, a.head)]),
            ]);
        }
    }
    let res = run(&SearchSpace { base, elements }, target, opts)?;
    let res = res.map(|ch| {
        ch.iter().zip(&cand).filter(|(c, _)| **c == 0).map(|(_, &i)| i).collect::<Vec<_>>()
    });
    if let Some(w) = &res.witness {
        debug_assert!(target.holds(&d.reverse_arcs(w).expect("valid witness")));
    }
    Ok(res)
}

/// Minimum number of arcs to deorient so that `d` satisfies `target`. The
/// witness lists the deoriented arcs.
pub fn min_deorientations(
    d: &MixedGraph,
    target: &Target,
    opts: &SolveOptions,
) -> Result<SolveResult<Vec<usize>>> {
    require_digraph(d)?;
    if d.n() <= vertex_floor(target) {
        return Ok(SolveResult::infeasible(0));
    }
    let frozen = if adjacency_only(target) { d.arcs_in_digons() } else { vec![false; d.num_arcs()] };
    let mut base = MixedGraph::new(d.n());
    let mut cand = Vec::new();
    let mut elements = Vec::new();
    for (i, a) in d.arcs().iter().enumerate() {
        if frozen[i] {
            base.add_arc(a.tail, a.head)?;
        } else {
            cand.push(i);
            elements.push(vec![
                Choice::new(vec![Piece::Edge(a.tail, a.head)], Weight::one()),
                Choice::free(vec![Piece::Arc(a.tail, a.head)]),
            ]);
        }
    }
    let res = run(&SearchSpace { base, elements }, target, opts)?;
    let res = res.map(|ch| {
        ch.iter().zip(&cand).filter(|(c, _)| **c == 0).map(|(_, &i)| i).collect::<Vec<_>>()
    });
    if let Some(w) = &res.witness {
        debug_assert!(target.holds(&d.deorient_arcs(w).expect("valid witness")));
    }
    Ok(res)
}

/// Minimum total weight of a set of edges whose doubling makes `g` satisfy
/// `target` (typically `Target::ArcStrong(c)`, i.e. c-edge-connectivity).
/// Unit weights when `weights` is `None`.
pub fn min_doubling(
    g: &MixedGraph,
    target: &Target,
    weights: Option<&[Weight]>,
    opts: &SolveOptions,
) -> Result<SolveResult<Vec<usize>>> {
    require_graph(g)?;
    if let Some(w) = weights {
        if w.len() != g.num_edges() {
            return Err(Error::Precondition("one weight per edge required".into()));
        }
    }
    if g.n() <= vertex_floor(target) {
        return Ok(SolveResult::infeasible(0));
    }
    let elements = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let w = weights.map_or(Weight::one(), |w| w[i]);
            vec![Choice::new(vec![Piece::Edge(e.u, e.v)], w), Choice::free(vec![])]
        })
        .collect();
    let res = run(&SearchSpace { base: g.clone(), elements }, target, opts)?;
    let res = res.map(|ch| (0..ch.len()).filter(|&i| ch[i] == 0).collect::<Vec<_>>());
    if let Some(w) = &res.witness {
        debug_assert!(target.holds(&g.double_edges(w).expect("valid witness")));
    }
    Ok(res)
}

/// Target of the doubling problem equivalent to 2-strong partial
/// orientation: 4-edge-connected and `G − v` 2-edge-connected for all `v`.
pub fn thomassen_doubling_target(n: usize) -> Target {
    Target::All(vec![
        Target::ArcStrong(4),
        Target::ArcStrongWithout { k: 2, vertices: (0..n).collect() },
    ])
}

/// Maximum number of edges of `g` that can be oriented while the resulting
/// mixed graph satisfies `target`. The optimum is the number of oriented
/// edges; among optimal partial orientations, lower-index edges are kept
/// undirected first.
pub fn max_partial_orientation(
    g: &MixedGraph,
    target: &Target,
    opts: &SolveOptions,
) -> Result<SolveResult<PartialOrientation>> {
    require_graph(g)?;
    if g.n() <= vertex_floor(target) {
        return Ok(SolveResult::infeasible(0));
    }
    let elements = g
        .edges()
        .iter()
        .map(|e| {
            vec![
                Choice::new(vec![Piece::Edge(e.u, e.v)], Weight::one()),
                Choice::free(vec![Piece::Arc(e.u, e.v)]),
                Choice::free(vec![Piece::Arc(e.v, e.u)]),
            ]
        })
        .collect();
    let mut o = *opts;
    o.budget = None;
    let res = run(&SearchSpace { base: MixedGraph::new(g.n()), elements }, target, &o)?;
    let m = Weight::from_integer(g.num_edges() as i64);
    let decisions = |ch: Vec<usize>| {
        ch.iter()
            .zip(g.edges())
            .map(|(&c, e)| match c {
                0 => EdgeDecision::Keep,
                1 => EdgeDecision::Orient { tail: e.u, head: e.v },
                _ => EdgeDecision::Orient { tail: e.v, head: e.u },
            })
            .collect::<Vec<_>>()
    };
    let optimum = res.optimum.map(|kept| m - kept);
    let witness = match res.witness {
        Some(ch) => Some(PartialOrientation::new(g.clone(), decisions(ch))?),
        None => None,
    };
    if let Some(po) = &witness {
        debug_assert!(target.holds(&po.realize()));
    }
    Ok(SolveResult { status: res.status, optimum, witness, nodes_explored: res.nodes_explored })
}

/// Finds an orientation of the undirected edges of `m` (arcs stay fixed)
/// satisfying `target`; the optimum is 0 when one exists.
pub fn find_orientation(
    m: &MixedGraph,
    target: &Target,
    opts: &SolveOptions,
) -> Result<SolveResult<Vec<EdgeDecision>>> {
    if m.n() <= vertex_floor(target) {
        return Ok(SolveResult::infeasible(0));
    }
    let mut base = MixedGraph::new(m.n());
    for a in m.arcs() {
        base.add_arc(a.tail, a.head)?;
    }
    let elements = m
        .edges()
        .iter()
        .map(|e| vec![Choice::free(vec![Piece::Arc(e.u, e.v)]), Choice::free(vec![Piece::Arc(e.v, e.u)])])
        .collect();
    let mut o = *opts;
    o.budget = None;
    let res = run(&SearchSpace { base, elements }, target, &o)?;
    Ok(res.map(|ch| {
        ch.iter()
            .zip(m.edges())
            .map(|(&c, e)| {
                if c == 0 {
                    EdgeDecision::Orient { tail: e.u, head: e.v }
                } else {
                    EdgeDecision::Orient { tail: e.v, head: e.u }
                }
            })
            .collect()
    }))
}

/// Applies orientation decisions to the edges of a mixed graph; kept edges
/// stay undirected.
pub fn apply_orientation(m: &MixedGraph, decisions: &[EdgeDecision]) -> Result<MixedGraph> {
    if decisions.len() != m.num_edges() {
        return Err(Error::Precondition("one decision per edge required".into()));
    }
    let mut out = MixedGraph::new(m.n());
    for (e, d) in m.edges().iter().zip(decisions) {
        match *d {
            EdgeDecision::Keep => {
                out.add_edge_labeled(e.u, e.v, e.label.clone())?;
            }
            EdgeDecision::Orient { tail, head } => {
                if !e.joins(tail, head) {
                    return Err(Error::Precondition("orientation does not match edge".into()));
                }
                out.add_arc_labeled(tail, head, e.label.clone())?;
            }
        }
    }
    for a in m.arcs() {
        out.add_arc_labeled(a.tail, a.head, a.label.clone())?;
    }
    Ok(out)
}

/// Decides whether `m` has a 2-arc-strong orientation whose deletion of any
/// vertex of `t` leaves a strong digraph. `t` must be independent in the
/// underlying graph.
pub fn independent_strong_orientation(
    m: &MixedGraph,
    t: &[VertexId],
    opts: &SolveOptions,
) -> Result<SolveResult<Vec<EdgeDecision>>> {
    let target = Target::All(vec![
        Target::ArcStrong(2),
        Target::ArcStrongWithout { k: 1, vertices: t.to_vec() },
    ]);
    find_orientation(m, &target, opts)
}

/// Orientation of `g` with `λ(x,y) ≥ r(x,y)` for all pairs, if any.
pub fn best_orientation_for_requirement(
    g: &MixedGraph,
    r: &Requirement,
    opts: &SolveOptions,
) -> Result<SolveResult<Vec<EdgeDecision>>> {
    require_graph(g)?;
    find_orientation(g, &Target::Requirement(r.clone()), opts)
}

/// Largest vertex count accepted by [`vertex_cover`].
pub const VERTEX_COVER_LIMIT: usize = 64;
/// Largest variable count accepted by [`max2sat`].
pub const MAX2SAT_LIMIT: usize = 24;

fn min_cover_with(g_edges: &[(usize, usize)], n: usize, fixed: &[Option<bool>], nodes: &mut u64) -> Option<usize> {
    // edges with both ends excluded make the partial choice infeasible
    if g_edges.iter().any(|&(u, v)| fixed[u] == Some(false) && fixed[v] == Some(false)) {
        return None;
    }
    let mut state = fixed.to_vec();
    let already = fixed.iter().filter(|s| **s == Some(true)).count();
    let mut best = n + 1;
    cover_rec(g_edges, &mut state, already, &mut best, nodes);
    (best <= n).then_some(best)
}

fn cover_rec(edges: &[(usize, usize)], state: &mut Vec<Option<bool>>, chosen: usize, best: &mut usize, nodes: &mut u64) {
    *nodes += 1;
    if chosen >= *best {
        return;
    }
    let open = edges.iter().find(|&&(u, v)| state[u] != Some(true) && state[v] != Some(true));
    let Some(&(u, v)) = open else {
        *best = chosen;
        return;
    };
    // branch: u in the cover, or u out (then v must be in)
    let (su, sv) = (state[u], state[v]);
    if su.is_none() {
        state[u] = Some(true);
        cover_rec(edges, state, chosen + 1, best, nodes);
        state[u] = su;
    }
    if sv.is_none() && su != Some(true) {
        let prev_u = state[u];
        if prev_u.is_none() {
            state[u] = Some(false);
        }
        state[v] = Some(true);
        cover_rec(edges, state, chosen + 1, best, nodes);
        state[v] = sv;
        state[u] = prev_u;
    }
}

/// Minimum vertex cover; the witness is the lexicographically smallest
/// minimum cover.
pub fn vertex_cover(g: &MixedGraph) -> Result<SolveResult<Vec<VertexId>>> {
    let n = g.n();
    if n > VERTEX_COVER_LIMIT {
        return Err(Error::SizeLimit(format!("vertex cover on {n} > {VERTEX_COVER_LIMIT} vertices")));
    }
    let ug = g.underlying_graph();
    let edges: Vec<(usize, usize)> = ug.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut nodes = 0;
    let mut fixed = vec![None; n];
    let best = min_cover_with(&edges, n, &fixed, &mut nodes).expect("all vertices cover everything");
    for v in 0..n {
        fixed[v] = Some(true);
        if min_cover_with(&edges, n, &fixed, &mut nodes) != Some(best) {
            fixed[v] = Some(false);
        }
    }
    let cover: Vec<VertexId> = (0..n).filter(|&v| fixed[v] == Some(true)).collect();
    debug_assert_eq!(cover.len(), best);
    Ok(SolveResult {
        status: Status::Optimal,
        optimum: Some(Weight::from_integer(best as i64)),
        witness: Some(cover),
        nodes_explored: nodes,
    })
}

/// Maximum number of simultaneously satisfiable clauses, by enumeration. The
/// witness is the first optimal assignment when assignments are read as
/// binary numbers with variable 0 as the lowest bit.
pub fn max2sat(inst: &SatInstance) -> Result<SolveResult<Vec<bool>>> {
    let n = inst.num_vars();
    if n > MAX2SAT_LIMIT {
        return Err(Error::SizeLimit(format!("{n} variables exceed {MAX2SAT_LIMIT}")));
    }
    let mut best = None;
    let mut assignment = vec![false; n];
    for mask in 0u64..(1u64 << n) {
        for (v, a) in assignment.iter_mut().enumerate() {
            *a = mask >> v & 1 == 1;
        }
        let s = inst.satisfied_count(&assignment);
        if best.as_ref().is_none_or(|(b, _)| s > *b) {
            best = Some((s, assignment.clone()));
        }
    }
    let (s, w) = best.expect("at least one assignment");
    Ok(SolveResult {
        status: Status::Optimal,
        optimum: Some(Weight::from_integer(s as i64)),
        witness: Some(w),
        nodes_explored: 1u64 << n,
    })
}

/// Unit weight per edge.
pub fn unit_weights(m: usize) -> Vec<Weight> {
    vec![Weight::one(); m]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{is_k_arc_strong, is_k_strong};

    fn w(x: i64) -> Weight {
        Weight::from_integer(x)
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

    fn cycle(n: usize) -> MixedGraph {
        MixedGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn reversal_basics() {
        let opts = SolveOptions::default();
        let r = min_reversals(&complete_digraph(4), &Target::Strong(2), &opts).unwrap();
        assert_eq!(r.optimum, Some(w(0)));
        let c3 = MixedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(min_reversals(&c3, &Target::ArcStrong(1), &opts).unwrap().optimum, Some(w(0)));
        let path = MixedGraph::from_arcs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = min_reversals(&path, &Target::ArcStrong(1), &opts).unwrap();
        assert_eq!(r.optimum, Some(w(1)));
        assert!(is_k_arc_strong(&path.reverse_arcs(r.witness.as_ref().unwrap()).unwrap(), 1));
    }

    #[test]
    fn deorientation_of_a_path() {
        // oracle: all four subsets of the two arcs
        let p = MixedGraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        let mut best = usize::MAX;
        for mask in 0..4usize {
            let f: Vec<usize> = (0..2).filter(|i| mask >> i & 1 == 1).collect();
            if is_k_strong(&p.deorient_arcs(&f).unwrap(), 1) {
                best = best.min(f.len());
            }
        }
        let r = min_deorientations(&p, &Target::Strong(1), &SolveOptions::default()).unwrap();
        assert_eq!(r.optimum, Some(w(best as i64)));
        assert_eq!(best, 2);
    }

    #[test]
    fn doubling_examples() {
        let opts = SolveOptions::default();
        let theta = MixedGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(min_doubling(&theta, &Target::ArcStrong(3), None, &opts).unwrap().optimum, Some(w(0)));
        assert_eq!(min_doubling(&cycle(4), &Target::ArcStrong(4), None, &opts).unwrap().optimum, Some(w(4)));
        for n in 3..=6 {
            let r = min_doubling(&cycle(n), &Target::ArcStrong(3), None, &opts).unwrap();
            assert_eq!(r.optimum, Some(w(n as i64 - 1)));
        }
        let path = MixedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(min_doubling(&path, &Target::ArcStrong(3), None, &opts).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn partial_orientation_examples() {
        let opts = SolveOptions::default();
        let r = max_partial_orientation(&cycle(4), &Target::ArcStrong(2), &opts).unwrap();
        assert_eq!(r.optimum, Some(w(0)));
        let r = max_partial_orientation(&cycle(4), &Target::ArcStrong(1), &opts).unwrap();
        assert_eq!(r.optimum, Some(w(4)));
        let mut k5 = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                k5.push((a, b));
            }
        }
        let k5 = MixedGraph::from_edges(5, &k5).unwrap();
        let r = max_partial_orientation(&k5, &Target::ArcStrong(2), &opts).unwrap();
        assert_eq!(r.optimum, Some(w(10)));
    }

    #[test]
    fn budget_modes() {
        let opts = SolveOptions::with_budget(w(2));
        let r = min_doubling(&cycle(5), &Target::ArcStrong(3), None, &opts).unwrap();
        assert_eq!(r.status, Status::OverBudget);
        let opts = SolveOptions::with_budget(w(4));
        let r = min_doubling(&cycle(5), &Target::ArcStrong(3), None, &opts).unwrap();
        assert!(r.within(w(4)));
    }

    #[test]
    fn cover_and_sat() {
        let r = vertex_cover(&cycle(4)).unwrap();
        assert_eq!(r.optimum, Some(w(2)));
        assert_eq!(r.witness, Some(vec![0, 2]));
        let r = vertex_cover(&cycle(5)).unwrap();
        assert_eq!(r.optimum, Some(w(3)));
        let inst = SatInstance::from_signed_pairs(1, &[(1, -1), (1, 1), (-1, -1)]).unwrap();
        let r = max2sat(&inst).unwrap();
        assert_eq!(r.optimum, Some(w(2)));
    }

    #[test]
    fn tree_has_no_strong_orientation() {
        let tree = MixedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = best_orientation_for_requirement(&tree, &Requirement::uniform(3, 1), &SolveOptions::default())
            .unwrap();
        assert_eq!(r.status, Status::Infeasible);
    }
}

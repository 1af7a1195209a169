//! Minimum deorientation meeting a degree lower bound at every vertex, via
//! a min-cost feasible flow.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{SolveResult, Status};
use crate::flow::FlowNetwork;
use crate::graph::MixedGraph;
use crate::Weight;

/// `min{d⁺(v)+d(v), d⁻(v)+d(v)} ≥ k` for every vertex.
pub fn satisfies_degree_condition(m: &MixedGraph, k: usize) -> bool {
    (0..m.n()).all(|v| {
        let d = m.edge_degree(v);
        m.out_degree(v) + d >= k && m.in_degree(v) + d >= k
    })
}

/// Minimum set of arcs of `d` whose deorientation satisfies the degree
/// condition. Each vertex has an "out" copy fed by the source and an "in"
/// copy draining to the sink, both with lower bound `k`; an arc `uv` links
/// `u_out → v_in` for free and `v_out → u_in` at unit cost, and the paid arcs
/// carrying flow are the deoriented ones.
pub fn degree_deorientation(d: &MixedGraph, k: usize) -> Result<SolveResult<Vec<usize>>> {
    if !d.is_digraph() {
        return Err(Error::Precondition("expected a digraph".into()));
    }
    let n = d.n();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = FlowNetwork::new(2 * n + 2, s, t)?;
    let big = (k * n.max(1)) as i64;
    for v in 0..n {
        net.add_arc(s, v, k as i64, big, Weight::zero())?;
        net.add_arc(n + v, t, k as i64, big, Weight::zero())?;
    }
    let mut paid = Vec::with_capacity(d.num_arcs());
    for a in d.arcs() {
        net.add_arc(a.tail, n + a.head, 0, 1, Weight::zero())?;
        paid.push(net.add_arc(a.head, n + a.tail, 0, 1, Weight::one())?);
    }
    let Some(sol) = net.min_cost_feasible_flow().feasible() else {
        return Ok(SolveResult { status: Status::Infeasible, optimum: None, witness: None, nodes_explored: 0 });
    };
    let f: Vec<usize> = (0..d.num_arcs()).filter(|&i| sol.flow[paid[i]] > 0).collect();
    debug_assert_eq!(Weight::from_integer(f.len() as i64), sol.cost);
    Ok(SolveResult {
        status: Status::Optimal,
        optimum: Some(sol.cost),
        witness: Some(f),
        nodes_explored: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(d: &MixedGraph, k: usize) -> Option<usize> {
        let m = d.num_arcs();
        (0..1u32 << m)
            .filter(|mask| {
                let f: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                satisfies_degree_condition(&d.deorient_arcs(&f).unwrap(), k)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
    }

    #[test]
    fn directed_triangle() {
        let c3 = MixedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(degree_deorientation(&c3, 1).unwrap().optimum, Some(Weight::zero()));
        let r = degree_deorientation(&c3, 2).unwrap();
        assert_eq!(r.optimum, Some(Weight::from_integer(3)));
        assert_eq!(brute(&c3, 2), Some(3));
    }

    #[test]
    fn out_star() {
        let star = MixedGraph::from_arcs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = degree_deorientation(&star, 1).unwrap();
        assert_eq!(r.optimum.map(|w| w.to_integer() as usize), brute(&star, 1));
        assert!(satisfies_degree_condition(
            &star.deorient_arcs(r.witness.as_ref().unwrap()).unwrap(),
            1
        ));
    }

    #[test]
    fn low_degree_is_infeasible() {
        let p = MixedGraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(degree_deorientation(&p, 2).unwrap().status, Status::Infeasible);
    }
}

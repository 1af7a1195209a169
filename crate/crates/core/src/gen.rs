//! Deterministic instance generators driven by a ChaCha stream.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::polyalg::is_cactus;
use crate::reductions::rocket::{build_rocket, RocketKind};
use crate::reductions::sat::{Literal, SatInstance};
use crate::reductions::vc4eda::class_g_instance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A standalone rocket of size `k`.
pub fn rocket(k: usize, kind: RocketKind) -> Result<MixedGraph> {
    Ok(build_rocket(kind, k)?.0)
}

/// `m` arcs drawn uniformly from ordered pairs of distinct vertices.
pub fn random_digraph(n: usize, m: usize, seed: u64) -> Result<MixedGraph> {
    if n < 2 && m > 0 {
        return Err(Error::Precondition("arcs need at least two vertices".into()));
    }
    let mut r = rng(seed);
    let mut d = MixedGraph::new(n);
    for _ in 0..m {
        let t = r.gen_range(0..n);
        let h = (t + r.gen_range(1..n)) % n;
        d.add_arc(t, h)?;
    }
    Ok(d)
}

/// `m` edges drawn uniformly from unordered pairs of distinct vertices.
pub fn random_multigraph(n: usize, m: usize, seed: u64) -> Result<MixedGraph> {
    let d = random_digraph(n, m, seed)?;
    Ok(d.underlying_graph())
}

/// A cactus on `n ≥ 2` vertices: a cycle, then cycles of length 2 to 4
/// glued at random existing vertices.
pub fn cactus(n: usize, seed: u64) -> Result<MixedGraph> {
    if n < 2 {
        return Err(Error::Precondition("a cactus needs at least two vertices".into()));
    }
    let mut r = rng(seed);
    let mut g = MixedGraph::new(1);
    let mut first = true;
    while g.n() < n {
        let room = n - g.n();
        let len = r.gen_range(2..=4).min(room + 1);
        let anchor = if first { 0 } else { r.gen_range(0..g.n()) };
        first = false;
        let start = g.add_vertices(len - 1);
        let mut prev = anchor;
        for v in start..start + len - 1 {
            g.add_edge(prev, v)?;
            prev = v;
        }
        g.add_edge(prev, anchor)?;
    }
    debug_assert!(n > 12 || is_cactus(&g));
    Ok(g)
}

/// Double subdivision of a cubic 2-connected graph.
pub fn class_g_from(cubic: &MixedGraph) -> Result<MixedGraph> {
    class_g_instance(cubic)
}

/// A random S3BMAX2SAT instance on an even number of variables: every
/// variable twice positive and once negated, clauses over two distinct
/// variables.
pub fn s3b_sat(vars: usize, seed: u64) -> Result<SatInstance> {
    if vars < 2 || !vars.is_multiple_of(2) {
        return Err(Error::Precondition("the variable count must be even and at least 2".into()));
    }
    let mut r = rng(seed);
    let mut slots: Vec<Literal> =
        (0..vars).flat_map(|x| [Literal::pos(x), Literal::pos(x), Literal::neg(x)]).collect();
    for _ in 0..100_000 {
        slots.shuffle(&mut r);
        if slots.chunks(2).all(|c| c[0].var != c[1].var) {
            return SatInstance::new(vars, slots.chunks(2).map(|c| c.to_vec()).collect());
        }
    }
    Err(Error::Precondition("no valid clause pairing found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::local_edge_connectivity;

    #[test]
    fn rocket_sizes() {
        assert_eq!(rocket(2, RocketKind::Out).unwrap().n(), 11);
    }

    #[test]
    fn sat_shape() {
        let s = s3b_sat(2, 1).unwrap();
        assert!(s.is_s3b_shape());
        assert_eq!(s, s3b_sat(2, 1).unwrap());
        assert!(s3b_sat(3, 1).is_err());
    }

    #[test]
    fn cactus_pairs_have_two_paths() {
        let g = cactus(6, 7).unwrap();
        assert_eq!(g.n(), 6);
        for u in 0..6 {
            for v in u + 1..6 {
                assert_eq!(local_edge_connectivity(&g, u, v).unwrap(), 2);
            }
        }
    }

    #[test]
    fn digraph_deterministic() {
        assert_eq!(random_digraph(5, 8, 3).unwrap(), random_digraph(5, 8, 3).unwrap());
        assert_eq!(random_digraph(5, 8, 3).unwrap().num_arcs(), 8);
    }
}

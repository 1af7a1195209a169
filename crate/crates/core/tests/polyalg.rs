use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reorient_core::connectivity::{is_k_edge_connected, local_arc_connectivity, Target};
use reorient_core::exact::{min_doubling, SolveOptions};
use reorient_core::gen;
use reorient_core::polyalg::{
    degree_deorientation, m4eda_approx, min_weight_branching_packing, satisfies_degree_condition,
    Direction, ExactAugmentation, PackingOutcome,
};
use reorient_core::polyalg::branching::is_valid_packing;
use reorient_core::{MixedGraph, Weight};

/// Minimum weight of an arc set that is the union of `k` disjoint spanning
/// out-branchings, recognised by the degree and rooted-connectivity
/// characterisation.
fn brute_packing(d: &MixedGraph, k: usize, root: usize, w: &[Weight]) -> Option<Weight> {
    let n = d.n();
    let m = d.num_arcs();
    let mut best: Option<Weight> = None;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != k * (n - 1) {
            continue;
        }
        let picked: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let mut indeg = vec![0; n];
        for &i in &picked {
            indeg[d.arcs()[i].head] += 1;
        }
        if indeg[root] != 0 || (0..n).any(|v| v != root && indeg[v] != k) {
            continue;
        }
        let sub = MixedGraph::from_arcs(n, &picked.iter().map(|&i| (d.arcs()[i].tail, d.arcs()[i].head)).collect::<Vec<_>>()).unwrap();
        if (0..n).filter(|&v| v != root).any(|v| local_arc_connectivity(&sub, root, v).unwrap() < k) {
            continue;
        }
        let total = picked.iter().map(|&i| w[i]).fold(Weight::from(0), |a, b| a + b);
        if best.is_none_or(|b| total < b) {
            best = Some(total);
        }
    }
    best
}

#[test]
fn branching_packings_are_optimal() {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    while checked < 150 {
        let n = r.gen_range(2..=4);
        let m = r.gen_range(n..=10);
        let d = gen::random_digraph(n, m, r.gen()).unwrap();
        let w: Vec<Weight> = (0..m).map(|_| Weight::new(r.gen_range(0..6), r.gen_range(1..3))).collect();
        for k in [1usize, 2] {
            for dir in [Direction::Out, Direction::In] {
                let oriented = match dir {
                    Direction::Out => d.clone(),
                    Direction::In => d.reverse_arcs(&(0..m).collect::<Vec<_>>()).unwrap(),
                };
                let want = brute_packing(&oriented, k, 0, &w);
                match min_weight_branching_packing(&d, k, 0, &w, dir).unwrap() {
                    PackingOutcome::Packing(p) => {
                        assert!(is_valid_packing(&d, &p));
                        assert_eq!(Some(p.weight), want, "{:?} k={k} {dir:?}", d.arcs());
                        checked += 1;
                    }
                    PackingOutcome::Infeasible { side, degree } => {
                        assert_eq!(want, None);
                        assert!(degree < k);
                        assert_eq!(side[0], dir == Direction::Out);
                    }
                }
            }
        }
    }
}

#[test]
fn doubling_a_cactus_is_spanning_connectivity() {
    for seed in 0..12 {
        let n = 3 + (seed as usize % 6);
        let g = gen::cactus(n, seed).unwrap();
        let m = g.num_edges();
        for mask in 0u32..(1 << m) {
            let f: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let spanning = MixedGraph::from_edges(n, &f.iter().map(|&i| (g.edges()[i].u, g.edges()[i].v)).collect::<Vec<_>>()).unwrap();
            assert_eq!(is_k_edge_connected(&g.double_edges(&f).unwrap(), 3), spanning.is_connected());
        }
    }
}

#[test]
fn m4eda_with_exact_plug_is_optimal() {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 60 {
        let n = r.gen_range(3..=6);
        let g = gen::random_multigraph(n, r.gen_range(n..=n + 5), r.gen()).unwrap();
        if !is_k_edge_connected(&g, 2) {
            continue;
        }
        done += 1;
        let res = m4eda_approx(&g, &ExactAugmentation::default()).unwrap();
        assert!(is_k_edge_connected(&g.double_edges(&res.doubled).unwrap(), 4));
        let opt = min_doubling(&g, &Target::ArcStrong(4), None, &SolveOptions::default()).unwrap();
        assert_eq!(Some(Weight::from(res.doubled.len() as i64)), opt.optimum);
    }
}

#[test]
fn m4eda_on_c4_doubles_everything() {
    let c4 = MixedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let res = m4eda_approx(&c4, &ExactAugmentation::default()).unwrap();
    assert_eq!(res.doubled, vec![0, 1, 2, 3]);
}

#[test]
fn degree_witness_meets_the_predicate() {
    for seed in 0..80 {
        let d = gen::random_digraph(5, 7, seed).unwrap();
        for k in [1, 2] {
            if let Some(f) = degree_deorientation(&d, k).unwrap().witness {
                assert!(satisfies_degree_condition(&d.deorient_arcs(&f).unwrap(), k));
            }
        }
    }
}

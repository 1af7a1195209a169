use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reorient_core::connectivity::{find_fan, is_k_edge_connected, is_k_strong, is_k_strong_in};
use reorient_core::exact::{independent_strong_orientation, min_reversals, SolveOptions};
use reorient_core::connectivity::Target;
use reorient_core::reductions::m2sar::reduce_i2vcomg_to_m2sar;
use reorient_core::reductions::rocket::host_contains;
use reorient_core::reductions::sat::SatInstance;
use reorient_core::reductions::sdo3::reduce_s3bmax2sat_to_3sdo;
use reorient_core::reductions::vc4eda::{class_g_instance, reduce_vc_to_4eda};
use reorient_core::{MixedGraph, Weight};

fn k4() -> MixedGraph {
    MixedGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

#[test]
fn every_rocket_keeps_its_interior_degrees() {
    let mut r = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..40 {
        let n = r.gen_range(2..=5);
        let mut m = MixedGraph::new(n);
        for _ in 0..r.gen_range(0..=3) {
            let u = r.gen_range(0..n);
            m.add_edge(u, (u + r.gen_range(1..n)) % n).unwrap();
        }
        for _ in 0..r.gen_range(1..=4) {
            let u = r.gen_range(0..n);
            m.add_arc(u, (u + r.gen_range(1..n)) % n).unwrap();
        }
        let t: Vec<usize> = (0..n).filter(|&v| v % 3 == 0 && r.gen_bool(0.5)).collect();
        let Ok(red) = reduce_i2vcomg_to_m2sar(&m, &t) else { continue };
        assert_eq!(red.rockets.len(), m.num_arcs());
        for rocket in &red.rockets {
            assert_eq!(rocket.k, m.num_edges());
            assert!(host_contains(&red.witness.graph, rocket));
        }
        assert_eq!(red.witness.vertex_labels.len(), red.witness.graph.n());
    }
}

#[test]
fn orientation_and_reversal_agree_on_a_triangle() {
    // triangle of edges plus an arc 0→1 and a digon-like pair between 1 and 2
    let mut m = MixedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    m.add_arc(0, 1).unwrap();
    m.add_arc(1, 2).unwrap();
    m.add_arc(2, 0).unwrap();
    let red = reduce_i2vcomg_to_m2sar(&m, &[]).unwrap();
    let src = independent_strong_orientation(&m, &[], &SolveOptions::default()).unwrap();
    let budget = Weight::from(red.witness.budget as i64);
    let tgt = min_reversals(&red.witness.graph, &Target::Strong(2), &SolveOptions::with_budget(budget)).unwrap();
    assert_eq!(src.is_feasible(), tgt.within(budget));
}

/// Grows the vertex set reached from the S-clique by adding one vertex at a
/// time that has three internally disjoint paths to and from the current set.
fn grow_by_fans(m: &MixedGraph, start: &[usize], k: usize) -> Vec<usize> {
    assert!(is_k_strong_in(m, start, k));
    let mut set = start.to_vec();
    let mut inside = vec![false; m.n()];
    for &v in start {
        inside[v] = true;
    }
    loop {
        let next = (0..m.n()).find(|&v| {
            !inside[v] && find_fan(m, v, &set, k, false).is_some() && find_fan(m, v, &set, k, true).is_some()
        });
        match next {
            Some(v) => {
                inside[v] = true;
                set.push(v);
            }
            None => return set,
        }
    }
}

#[test]
fn satisfying_lifts_are_covered_by_path_fans() {
    let inst = SatInstance::from_signed_pairs(2, &[(1, 2), (1, -2), (-1, 2)]).unwrap();
    let red = reduce_s3bmax2sat_to_3sdo(&inst, 3).unwrap();
    for phi in [[true, true], [false, true], [true, false], [false, false]] {
        let f = red.lift_forward(&phi).unwrap();
        let m = red.witness.graph.deorient_arcs(&f).unwrap();
        let reached = grow_by_fans(&m, &red.s_clique, 3);
        assert_eq!(reached.len(), m.n(), "{phi:?}");
        assert!(is_k_strong(&m, 3));
    }
}

#[test]
fn three_sdo_rejects_wrong_shape() {
    let inst = SatInstance::from_signed_pairs(2, &[(1, -1), (1, 2), (2, -2)]).unwrap();
    assert!(reduce_s3bmax2sat_to_3sdo(&inst, 1).is_err());
}

#[test]
fn back_lift_of_minimal_doubling_sets() {
    let g = class_g_instance(&k4()).unwrap();
    let red = reduce_vc_to_4eda(&g, 9).unwrap();
    let h = &red.witness.graph;
    let mut r = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..12 {
        let mut f: Vec<usize> = (0..h.num_edges()).collect();
        let mut order = f.clone();
        order.shuffle(&mut r);
        for i in order {
            let trial: Vec<usize> = f.iter().copied().filter(|&j| j != i).collect();
            if is_k_edge_connected(&h.double_edges(&trial).unwrap(), 4) {
                f = trial;
            }
        }
        let cover = red.lift_back(&f).unwrap();
        assert!(g.edges().iter().all(|e| cover.contains(&e.u) || cover.contains(&e.v)));
        assert!(cover.len() + g.n() <= f.len(), "cover {} from |F| = {}", cover.len(), f.len());
    }
}

#[test]
fn infeasible_doubling_set_rejected() {
    let g = class_g_instance(&k4()).unwrap();
    let red = reduce_vc_to_4eda(&g, 9).unwrap();
    assert!(red.lift_back(&[]).is_err());
}

use proptest::prelude::*;

use reorient_core::connectivity::{arc_strong_connectivity, is_k_arc_strong, is_strong};
use reorient_core::format::{emit, emit_graph, parse, Document};
use reorient_core::MixedGraph;

fn mixed_graph() -> impl Strategy<Value = MixedGraph> {
    (2usize..7).prop_flat_map(|n| {
        let pair = (0..n, 1..n).prop_map(move |(u, d)| (u, (u + d) % n));
        (Just(n), prop::collection::vec(pair.clone(), 0..10), prop::collection::vec(pair, 0..10))
    })
    .prop_map(|(n, edges, arcs)| {
        let mut g = MixedGraph::from_edges(n, &edges).unwrap();
        for (t, h) in arcs {
            g.add_arc(t, h).unwrap();
        }
        g
    })
}

fn digraph() -> impl Strategy<Value = MixedGraph> {
    mixed_graph().prop_map(|g| {
        let mut d = MixedGraph::new(g.n());
        for a in g.arcs() {
            d.add_arc(a.tail, a.head).unwrap();
        }
        d
    })
}

proptest! {
    #[test]
    fn reversing_twice_is_identity(d in digraph(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        if d.num_arcs() > 0 {
            let mut f: Vec<usize> = picks.iter().map(|i| i.index(d.num_arcs())).collect();
            f.sort_unstable();
            f.dedup();
            let twice = d.reverse_arcs(&f).unwrap().reverse_arcs(&f).unwrap();
            prop_assert_eq!(twice, d);
        }
    }

    #[test]
    fn deorienting_never_lowers_connectivity(d in digraph(), pick in any::<prop::sample::Index>()) {
        if d.num_arcs() > 0 {
            let i = pick.index(d.num_arcs());
            let m = d.deorient_arcs(&[i]).unwrap();
            prop_assert_eq!(m.num_edges(), 1);
            prop_assert!(arc_strong_connectivity(&m) >= arc_strong_connectivity(&d));
        }
    }

    #[test]
    fn digon_and_edge_are_interchangeable(g in mixed_graph()) {
        let as_digons = g.edge_to_digon();
        prop_assert!(as_digons.is_digraph());
        prop_assert_eq!(arc_strong_connectivity(&as_digons), arc_strong_connectivity(&g));
        prop_assert_eq!(is_strong(&g.digon_to_edge()), is_strong(&g));
    }

    #[test]
    fn arc_strong_is_monotone_in_k(g in mixed_graph()) {
        let lam = arc_strong_connectivity(&g).unwrap();
        prop_assert!(is_k_arc_strong(&g, lam));
        prop_assert!(!is_k_arc_strong(&g, lam + 1));
    }

    #[test]
    fn text_format_round_trips(g in mixed_graph()) {
        let text = emit_graph(&g);
        let doc = parse(&text).unwrap();
        prop_assert_eq!(&doc.graph, &g);
        prop_assert_eq!(emit(&doc), text);
    }

    #[test]
    fn contraction_keeps_crossing_elements(g in mixed_graph()) {
        let (c, map) = g.contract(&[0, 1]).unwrap();
        prop_assert_eq!(c.n(), g.n() - 1);
        let inside = |u: usize, v: usize| (u <= 1) && (v <= 1);
        let kept_edges = g.edges().iter().filter(|e| !inside(e.u, e.v)).count();
        prop_assert_eq!(c.num_edges(), kept_edges);
        prop_assert_eq!(map[0], map[1]);
    }
}

#[test]
fn json_mirror_of_a_document_graph() {
    let doc = parse("e 0 1\na 1 2\nlabel a 0 tip\n").unwrap();
    let json = serde_json::to_string(&doc.graph).unwrap();
    let back: MixedGraph = serde_json::from_str(&json).unwrap();
    assert_eq!(back, doc.graph);
    assert_eq!(Document::from_graph(back).graph.arcs()[0].label.as_deref(), Some("tip"));
}

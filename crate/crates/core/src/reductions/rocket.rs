//! The rocket gadget: three chains of triangles ending in an apex `u` whose
//! tip arc `uv*` cannot be reversed cheaply in a 2-strong reorientation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MixedGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RocketKind {
    Out,
    In,
}

/// A rocket embedded in some host digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rocket {
    pub kind: RocketKind,
    pub k: usize,
    /// `x₀, y₀, z₀, v*`.
    pub exterior: [VertexId; 4],
    /// `x₁..x_k`.
    pub x: Vec<VertexId>,
    pub y: Vec<VertexId>,
    pub z: Vec<VertexId>,
    pub u: VertexId,
    /// Host arc indices of the rocket, in definition order.
    pub arcs: Vec<usize>,
    /// Host index of the tip arc (`uv*`, reversed in an in-rocket).
    pub tip: usize,
}

impl Rocket {
    pub fn interior(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.x.iter().chain(&self.y).chain(&self.z).copied().collect();
        v.push(self.u);
        v
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let mut v = self.exterior.to_vec();
        v.extend(self.interior());
        v
    }
}

/// Adds a rocket with the given exterior vertices to `host`. `k = 0` gives
/// the degenerate rocket with only the apex (arcs `x₀u, y₀u, uz₀, uv*`).
pub fn embed_rocket(
    host: &mut MixedGraph,
    kind: RocketKind,
    k: usize,
    exterior: [VertexId; 4],
    name: &str,
) -> Result<Rocket> {
    for (i, &a) in exterior.iter().enumerate() {
        if a >= host.n() {
            return Err(Error::VertexOutOfRange { vertex: a, n: host.n() });
        }
        if exterior[..i].contains(&a) {
            return Err(Error::Precondition("rocket exterior vertices must be distinct".into()));
        }
    }
    let [x0, y0, z0, vstar] = exterior;
    let first = host.add_vertices(3 * k + 1);
    let x: Vec<VertexId> = (0..k).map(|i| first + i).collect();
    let y: Vec<VertexId> = (0..k).map(|i| first + k + i).collect();
    let z: Vec<VertexId> = (0..k).map(|i| first + 2 * k + i).collect();
    let u = first + 3 * k;
    let xs = |i: usize| if i == 0 { x0 } else { x[i - 1] };
    let ys = |i: usize| if i == 0 { y0 } else { y[i - 1] };
    let zs = |i: usize| if i == 0 { z0 } else { z[i - 1] };
    let mut list: Vec<(VertexId, VertexId, String)> = Vec::new();
    for i in 1..=k {
        list.push((xs(i), ys(i), format!("{name}:x{i}y{i}")));
        list.push((ys(i), zs(i), format!("{name}:y{i}z{i}")));
        list.push((zs(i), xs(i), format!("{name}:z{i}x{i}")));
    }
    for i in 0..k {
        list.push((xs(i), xs(i + 1), format!("{name}:x{i}x{}", i + 1)));
        list.push((ys(i), ys(i + 1), format!("{name}:y{i}y{}", i + 1)));
        list.push((zs(i + 1), zs(i), format!("{name}:z{}z{i}", i + 1)));
    }
    list.push((xs(k), u, format!("{name}:x{k}u")));
    list.push((ys(k), u, format!("{name}:y{k}u")));
    list.push((u, zs(k), format!("{name}:uz{k}")));
    list.push((u, vstar, format!("{name}:tip")));
    let mut arcs = Vec::with_capacity(list.len());
    for (t, h, label) in list {
        let (t, h) = match kind {
            RocketKind::Out => (t, h),
            RocketKind::In => (h, t),
        };
        arcs.push(host.add_arc_labeled(t, h, Some(label))?);
    }
    let tip = *arcs.last().expect("rocket has arcs");
    Ok(Rocket { kind, k, exterior, x, y, z, u, arcs, tip })
}

/// A standalone rocket on vertices `x₀, y₀, z₀, v*, x₁..x_k, y₁..y_k,
/// z₁..z_k, u` (in this order) with `6k + 4` arcs.
pub fn build_rocket(kind: RocketKind, k: usize) -> Result<(MixedGraph, Rocket)> {
    if k < 1 {
        return Err(Error::Precondition("rocket size must be at least 1".into()));
    }
    let mut g = MixedGraph::new(4);
    let r = embed_rocket(&mut g, kind, k, [0, 1, 2, 3], "R")?;
    Ok((g, r))
}

/// Whether `host` contains `rocket` in the strong sense: its arcs are present
/// and every interior vertex has the same in- and out-degree as in the rocket.
pub fn host_contains(host: &MixedGraph, rocket: &Rocket) -> bool {
    let arcs_ok = rocket.arcs.iter().all(|&i| i < host.num_arcs());
    arcs_ok
        && rocket.interior().iter().all(|&v| {
            let out = rocket.arcs.iter().filter(|&&i| host.arcs()[i].tail == v).count();
            let inn = rocket.arcs.iter().filter(|&&i| host.arcs()[i].head == v).count();
            host.out_degree(v) == out && host.in_degree(v) == inn && host.edge_degree(v) == 0
        })
}

/// Host used to exercise the tip property: the rocket plus digons between
/// every pair of exterior vertices.
pub fn tip_host(kind: RocketKind, k: usize) -> Result<(MixedGraph, Rocket)> {
    let (mut g, r) = build_rocket(kind, k)?;
    for a in 0..4 {
        for b in 0..4 {
            if a != b {
                g.add_arc(a, b)?;
            }
        }
    }
    Ok((g, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_strong;

    #[test]
    fn sizes() {
        for k in 1..=4 {
            let (g, r) = build_rocket(RocketKind::Out, k).unwrap();
            assert_eq!(g.n(), 3 * (k + 1) + 2);
            assert_eq!(g.num_arcs(), 6 * k + 4);
            assert_eq!(g.arcs()[r.tip].tail, r.u);
            assert_eq!(g.arcs()[r.tip].head, 3);
            assert!(host_contains(&g, &r));
        }
        let (g, r) = build_rocket(RocketKind::In, 2).unwrap();
        assert_eq!((g.n(), g.num_arcs()), (11, 16));
        assert_eq!(g.arcs()[r.tip].head, r.u);
        assert!(build_rocket(RocketKind::Out, 0).is_err());
    }

    #[test]
    fn identified_exteriors_survive_interior_deletion() {
        for kind in [RocketKind::Out, RocketKind::In] {
            let (g, r) = build_rocket(kind, 2).unwrap();
            let (h, map) = g.contract(&r.exterior).unwrap();
            assert!(is_strong(&h));
            for v in r.interior() {
                assert!(is_strong(&h.delete_vertices(&[map[v]]).unwrap().0));
            }
        }
    }

    #[test]
    fn embedding_respects_degrees() {
        let (mut g, _) = tip_host(RocketKind::Out, 1).unwrap();
        let r2 = embed_rocket(&mut g, RocketKind::In, 1, [3, 2, 1, 0], "S").unwrap();
        assert!(host_contains(&g, &r2));
        g.add_arc(r2.u, 0).unwrap();
        assert!(!host_contains(&g, &r2));
    }
}

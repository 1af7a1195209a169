//! From S3BMAX2SAT to deorienting a digraph into a 3-strong mixed graph, and
//! the lift to `ℓ`-strong for `ℓ ≥ 4`.

use serde::{Deserialize, Serialize};

use super::sat::SatInstance;
use super::ReductionWitness;
use crate::error::{Error, Result};
use crate::graph::{MixedGraph, VertexId};

/// Per-variable arcs of the gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableArcs {
    /// Clauses `C₁, C₂, C₃` with the variable positive in `C₁, C₃`.
    pub clauses: [usize; 3],
    /// Deoriented when the variable is TRUE.
    pub true_menu: [usize; 6],
    /// Deoriented when the variable is FALSE.
    pub false_menu: [usize; 6],
    /// `q_(x,C₂) v_C₂`; its deorientation encodes FALSE.
    pub negated_clause_arc: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sdo3Reduction {
    pub witness: ReductionWitness,
    pub variables: Vec<VariableArcs>,
    /// `s_C v_C` per clause.
    pub clause_arcs: Vec<usize>,
    /// Vertices whose pairs are all joined by digons.
    pub s_clique: Vec<VertexId>,
    source: SatInstance,
}

fn clause_order(inst: &SatInstance, x: usize) -> Result<[usize; 3]> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (j, c) in inst.clauses().iter().enumerate() {
        for l in c.iter().filter(|l| l.var == x) {
            if l.negated {
                neg.push(j);
            } else {
                pos.push(j);
            }
        }
    }
    match (pos.as_slice(), neg.as_slice()) {
        (&[a, b], &[c]) if a != b && a != c && b != c => Ok([a, c, b]),
        _ => Err(Error::Precondition(format!(
            "variable {x} must occur positively in two clauses and negated in a third"
        ))),
    }
}

pub fn reduce_s3bmax2sat_to_3sdo(inst: &SatInstance, ell: usize) -> Result<Sdo3Reduction> {
    if !inst.is_s3b_shape() {
        return Err(Error::Precondition("instance is not in S3BMAX2SAT shape".into()));
    }
    if inst.clauses().iter().any(|c| c[0].var == c[1].var) {
        return Err(Error::Precondition("every clause must contain two distinct variables".into()));
    }
    let nc = inst.clauses().len();
    let nx = inst.num_vars();
    if ell > 6 * nx + nc {
        return Err(Error::Precondition(format!("ℓ = {ell} leaves a negative budget")));
    }
    let orders = (0..nx).map(|x| clause_order(inst, x)).collect::<Result<Vec<_>>>()?;

    let mut d = MixedGraph::new(0);
    let mut labels = Vec::new();
    let mut vertex = |d: &mut MixedGraph, name: String| {
        labels.push(name);
        d.add_vertex()
    };
    let mut s_clique = Vec::new();
    // p, q, s of every incident pair, indexed by (variable, position 0..3)
    let mut pair = vec![[[0usize; 3]; 3]; nx];
    for (x, order) in orders.iter().enumerate() {
        for (i, &c) in order.iter().enumerate() {
            for (r, name) in ["p", "q", "s"].iter().enumerate() {
                pair[x][i][r] = vertex(&mut d, format!("{name}_(x{x},C{c})"));
            }
            s_clique.push(pair[x][i][2]);
        }
    }
    let mut px = vec![0; nx];
    let mut qx = vec![0; nx];
    let mut sx = vec![[0usize; 4]; nx];
    let mut wx = vec![[0usize; 4]; nx];
    for x in 0..nx {
        px[x] = vertex(&mut d, format!("p_x{x}"));
        qx[x] = vertex(&mut d, format!("q_x{x}"));
        for i in 0..4 {
            sx[x][i] = vertex(&mut d, format!("s_x{x}^{}", i + 1));
            s_clique.push(sx[x][i]);
        }
        for i in 0..4 {
            wx[x][i] = vertex(&mut d, format!("w_x{x}^{}", i + 1));
        }
    }
    let mut vc = vec![0; nc];
    let mut sc = vec![0; nc];
    for c in 0..nc {
        vc[c] = vertex(&mut d, format!("v_C{c}"));
        sc[c] = vertex(&mut d, format!("s_C{c}"));
        s_clique.push(sc[c]);
    }

    let digon = |d: &mut MixedGraph, a: VertexId, b: VertexId| -> Result<()> {
        d.add_arc(a, b)?;
        d.add_arc(b, a)?;
        Ok(())
    };
    for triples in &pair {
        for t in triples {
            digon(&mut d, t[0], t[1])?;
            digon(&mut d, t[0], t[2])?;
            digon(&mut d, t[1], t[2])?;
        }
    }
    for x in 0..nx {
        digon(&mut d, px[x], qx[x])?;
        digon(&mut d, px[x], sx[x][2])?;
        digon(&mut d, qx[x], sx[x][2])?;
    }
    let mut clause_arcs = Vec::with_capacity(nc);
    for c in 0..nc {
        clause_arcs.push(d.add_arc(sc[c], vc[c])?);
    }
    let mut variables = Vec::with_capacity(nx);
    for x in 0..nx {
        for i in 0..4 {
            for j in 0..2 {
                digon(&mut d, wx[x][i], sx[x][j])?;
            }
        }
        let [c1, c2, c3] = orders[x];
        let (p, q) = (|i: usize| pair[x][i][0], |i: usize| pair[x][i][1]);
        let w = wx[x];
        let list = [
            (q(0), w[0]),
            (p(1), w[0]),
            (q(1), w[1]),
            (p(2), w[1]),
            (q(2), w[2]),
            (px[x], w[2]),
            (qx[x], w[3]),
            (p(0), w[3]),
            (p(0), vc[c1]),
            (vc[c1], q(0)),
            (q(1), vc[c2]),
            (vc[c2], p(1)),
            (p(2), vc[c3]),
            (vc[c3], q(2)),
            (qx[x], sx[x][3]),
            (sx[x][3], px[x]),
        ];
        let mut ids = [0usize; 16];
        for (slot, &(a, b)) in list.iter().enumerate() {
            ids[slot] = d.add_arc(a, b)?;
        }
        variables.push(VariableArcs {
            clauses: orders[x],
            true_menu: [ids[0], ids[2], ids[4], ids[6], ids[8], ids[12]],
            false_menu: [ids[7], ids[1], ids[3], ids[5], ids[10], ids[14]],
            negated_clause_arc: ids[10],
        });
    }
    for (i, &a) in s_clique.iter().enumerate() {
        for &b in &s_clique[i + 1..] {
            digon(&mut d, a, b)?;
        }
    }
    let budget = 6 * nx + nc - ell;
    Ok(Sdo3Reduction {
        witness: ReductionWitness { graph: d, budget, vertex_labels: labels },
        variables,
        clause_arcs,
        s_clique,
        source: inst.clone(),
    })
}

impl Sdo3Reduction {
    /// Deorientation set of size `6|X| + (unsatisfied clauses)` for `φ`.
    pub fn lift_forward(&self, assignment: &[bool]) -> Result<Vec<usize>> {
        if assignment.len() != self.source.num_vars() {
            return Err(Error::Precondition(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.source.num_vars()
            )));
        }
        let mut f = Vec::new();
        for (x, va) in self.variables.iter().enumerate() {
            f.extend_from_slice(if assignment[x] { &va.true_menu } else { &va.false_menu });
        }
        for (c, clause) in self.source.clauses().iter().enumerate() {
            if !clause.iter().any(|l| l.eval(assignment)) {
                f.push(self.clause_arcs[c]);
            }
        }
        f.sort_unstable();
        Ok(f)
    }

    /// A variable is TRUE unless the arc into its negated clause was deoriented.
    pub fn lift_back(&self, deoriented: &[usize]) -> Vec<bool> {
        self.variables.iter().map(|va| !deoriented.contains(&va.negated_clause_arc)).collect()
    }
}

/// Adds `ℓ − 3` vertices joined by digons to every vertex and to each other;
/// the budget is unchanged.
pub fn lift_3sdo_to_lstrong(w: &ReductionWitness, ell: usize) -> Result<ReductionWitness> {
    if ell < 4 {
        return Err(Error::Precondition(format!("ℓ must be at least 4, got {ell}")));
    }
    let mut d = w.graph.clone();
    let mut labels = w.vertex_labels.clone();
    let old = d.n();
    for i in 0..ell - 3 {
        let u = d.add_vertex();
        labels.push(format!("universal{i}"));
        for v in 0..u {
            d.add_arc(u, v)?;
            d.add_arc(v, u)?;
        }
    }
    debug_assert_eq!(d.n(), old + ell - 3);
    Ok(ReductionWitness { graph: d, budget: w.budget, vertex_labels: labels })
}

//! Polynomial-time and approximation algorithms.

pub mod approx;
pub mod branching;
pub mod cactus;
pub mod degrees;
pub mod robbins;

pub use approx::{deor_k_arc_2approx, m4eda_approx, AugmentationSolver, DeorApprox, ExactAugmentation, M4edaResult};
pub use branching::{min_weight_branching_packing, BranchingPacking, Direction, PackingOutcome};
pub use cactus::{cactus_quotient, has_degree_two_vertex, is_cactus, w23eda, CactusQuotient};
pub use degrees::{degree_deorientation, satisfies_degree_condition};
pub use robbins::{robbins_partial_orientation, RobbinsOutcome};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already together.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

//! CNF instances with small clauses, occurrence bookkeeping and the
//! normalization to the "twice positive, once negated" shape.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// Parses a signed 1-based literal (`3` is x₃, `-3` its negation).
    pub fn from_signed(x: i64) -> Result<Self> {
        if x == 0 {
            return Err(Error::Precondition("literal 0 is not allowed".into()));
        }
        Ok(Literal { var: x.unsigned_abs() as usize - 1, negated: x < 0 })
    }

    pub fn to_signed(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatInstance {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl SatInstance {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Precondition(format!("clause {i} is empty")));
            }
            for l in c {
                if l.var >= num_vars {
                    return Err(Error::Precondition(format!(
                        "clause {i} uses variable {} of {num_vars}",
                        l.var
                    )));
                }
            }
        }
        Ok(SatInstance { num_vars, clauses })
    }

    /// Builds a 2-CNF instance from signed 1-based literal pairs.
    pub fn from_signed_pairs(num_vars: usize, pairs: &[(i64, i64)]) -> Result<Self> {
        let clauses = pairs
            .iter()
            .map(|&(a, b)| Ok(vec![Literal::from_signed(a)?, Literal::from_signed(b)?]))
            .collect::<Result<Vec<_>>>()?;
        SatInstance::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// (positive, negated) occurrence counts of `var`.
    pub fn occurrences(&self, var: usize) -> (usize, usize) {
        let mut pos = 0;
        let mut neg = 0;
        for l in self.clauses.iter().flatten() {
            if l.var == var {
                if l.negated {
                    neg += 1;
                } else {
                    pos += 1;
                }
            }
        }
        (pos, neg)
    }

    /// Every clause has two literals and every variable occurs exactly twice
    /// positively and once negated.
    pub fn is_s3b_shape(&self) -> bool {
        self.clauses.iter().all(|c| c.len() == 2)
            && (0..self.num_vars).all(|v| self.occurrences(v) == (2, 1))
    }

    pub fn satisfied_count(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| l.eval(assignment)))
            .count()
    }
}

/// Negates every variable that occurs once positively and twice negated, so
/// that each variable ends up twice positive and once negated. Returns the new
/// instance and the flipped variables; an assignment `φ` of the input
/// corresponds to `φ` with the flipped variables negated.
pub fn normalize_to_s3bmax2sat(inst: &SatInstance) -> Result<(SatInstance, Vec<bool>)> {
    let mut flip = vec![false; inst.num_vars];
    for (v, f) in flip.iter_mut().enumerate() {
        match inst.occurrences(v) {
            (2, 1) => {}
            (1, 2) => *f = true,
            (p, n) => {
                return Err(Error::Precondition(format!(
                    "variable {v} occurs {p} times positively and {n} times negated"
                )))
            }
        }
    }
    let clauses = inst
        .clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|l| Literal { var: l.var, negated: l.negated != flip[l.var] })
                .collect()
        })
        .collect();
    Ok((SatInstance::new(inst.num_vars, clauses)?, flip))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flips_minority_positive_variables() {
        let inst = SatInstance::from_signed_pairs(2, &[(1, 2), (-1, 2), (-1, -2)]).unwrap();
        let (out, flip) = normalize_to_s3bmax2sat(&inst).unwrap();
        assert_eq!(flip, vec![true, false]);
        assert!(out.is_s3b_shape());
    }

    #[test]
    fn normalized_instance_unchanged() {
        let inst = SatInstance::from_signed_pairs(2, &[(1, 2), (1, -2), (-1, 2)]).unwrap();
        assert!(inst.is_s3b_shape());
        let (out, flip) = normalize_to_s3bmax2sat(&inst).unwrap();
        assert_eq!(out, inst);
        assert_eq!(flip, vec![false, false]);
    }

    #[test]
    fn wrong_occurrence_counts_rejected() {
        let inst = SatInstance::from_signed_pairs(2, &[(1, 2), (1, 2)]).unwrap();
        assert!(normalize_to_s3bmax2sat(&inst).is_err());
    }

    #[test]
    fn signed_round_trip() {
        for x in [-3i64, -1, 1, 7] {
            assert_eq!(Literal::from_signed(x).unwrap().to_signed(), x);
        }
        assert!(Literal::from_signed(0).is_err());
    }
}

//! Free `Z`-modules of finite rank with an action of a finite group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupTable};
use crate::intmat::{kernel_basis, IntMatrix};

/// `Z^rank` with `Δ` acting through `action[g]` on column vectors, and an optional
/// `Δ`-stable splitting `M = M_1 ⊕ M_2` along a partition of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeWithAction {
    rank: usize,
    group: FiniteGroup,
    action: Vec<IntMatrix>,
    m1: Vec<usize>,
}

/// Wire form. `m1` lists the basis indices spanning `M_1`; the rest span `M_2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<IntMatrix>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub m1: Vec<usize>,
}

impl LatticeWithAction {
    pub fn new(rank: usize, group: FiniteGroup, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Invalid(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for (g, a) in action.iter().enumerate() {
            if a.nrows() != rank || a.ncols() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: a.nrows(),
                });
            }
            if rank > 0 && a.det().abs() != 1 {
                return Err(Error::Invalid(format!(
                    "action of element {g} is not invertible over Z"
                )));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                if action[g].mul(&action[h]) != action[group.mul(g, h)] {
                    return Err(Error::Invalid(format!(
                        "lattice action is not a homomorphism at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(LatticeWithAction {
            rank,
            group,
            action,
            m1: Vec::new(),
        })
    }

    /// `Z^rank` with trivial action of `group`.
    pub fn trivial(rank: usize, group: FiniteGroup) -> Self {
        let action = vec![IntMatrix::identity(rank); group.order()];
        Self::new(rank, group, action).expect("trivial action")
    }

    /// Declares the basis vectors with the given indices to span `M_1`.
    pub fn with_splitting(mut self, m1: Vec<usize>) -> Result<Self> {
        if m1.iter().any(|&i| i >= self.rank) {
            return Err(Error::Invalid("splitting index out of range".into()));
        }
        let in1 = |i: usize| m1.contains(&i);
        for (g, a) in self.action.iter().enumerate() {
            for i in 0..self.rank {
                for j in 0..self.rank {
                    if in1(i) != in1(j) && a[(i, j)] != 0 {
                        return Err(Error::Invalid(format!(
                            "splitting is not stable under element {g}"
                        )));
                    }
                }
            }
        }
        self.m1 = m1;
        Ok(self)
    }

    pub fn from_json(j: LatticeJson) -> Result<Self> {
        let group = match j.group {
            Some(t) => FiniteGroup::try_from(t)?,
            None => FiniteGroup::trivial(),
        };
        let lat = match j.action {
            Some(action) => Self::new(j.rank, group, action)?,
            None => Self::trivial(j.rank, group),
        };
        lat.with_splitting(j.m1)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            rank: self.rank,
            group: Some(self.group.clone().into()),
            action: Some(self.action.clone()),
            m1: self.m1.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    /// The summand `M_2` (everything outside `M_1`) with its restricted action.
    pub fn m2(&self) -> Self {
        let idx: Vec<usize> = (0..self.rank).filter(|i| !self.m1.contains(i)).collect();
        let action = self
            .action
            .iter()
            .map(|a| {
                let rows: Vec<Vec<i64>> = idx
                    .iter()
                    .map(|&i| idx.iter().map(|&j| a[(i, j)]).collect())
                    .collect();
                IntMatrix::from_rows_with_cols(&rows, idx.len())
            })
            .collect();
        Self::new(idx.len(), self.group.clone(), action).expect("restriction of a stable splitting")
    }

    /// Rank of the `Δ`-invariants of `M ⊗ Q`.
    pub fn invariant_rank(&self) -> usize {
        if self.rank == 0 {
            return 0;
        }
        let blocks: Vec<IntMatrix> = self
            .action
            .iter()
            .map(|a| a.sub(&IntMatrix::identity(self.rank)))
            .collect();
        kernel_basis(&IntMatrix::vstack(&blocks, self.rank)).nrows()
    }

    /// Whether `Δ` acts trivially on `M ⊗ Q` (equivalently on `M`).
    pub fn is_trivial_action(&self) -> bool {
        self.action.iter().all(IntMatrix::is_identity)
    }

    /// Contragredient lattice `Hom(M, Z)` with action `A^{-T}`.
    pub fn dual(&self) -> Self {
        let action = self
            .action
            .iter()
            .map(|a| a.inverse_unimodular().expect("unimodular").transpose())
            .collect();
        Self::new(self.rank, self.group.clone(), action).expect("dual action")
    }

    /// Same lattice with the action pulled back along a group isomorphism given as an index map
    /// from `new_group` to the current group.
    pub fn reindexed(&self, new_group: FiniteGroup, map: &[usize]) -> Result<Self> {
        let action = map.iter().map(|&g| self.action[g].clone()).collect();
        Self::new(self.rank, new_group, action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_action_has_no_invariants() {
        let m = LatticeWithAction::new(
            1,
            FiniteGroup::cyclic(2),
            vec![IntMatrix::identity(1), IntMatrix::identity(1).scale(-1)],
        )
        .unwrap();
        assert_eq!(m.invariant_rank(), 0);
        assert!(!m.is_trivial_action());
        assert_eq!(m.dual(), m);
    }

    #[test]
    fn splitting_must_be_stable() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let m = LatticeWithAction::new(
            2,
            FiniteGroup::cyclic(2),
            vec![IntMatrix::identity(2), swap],
        )
        .unwrap();
        assert!(m.clone().with_splitting(vec![0]).is_err());
        let t = LatticeWithAction::trivial(3, FiniteGroup::cyclic(2))
            .with_splitting(vec![0])
            .unwrap();
        assert_eq!(t.m2().rank(), 2);
    }
}

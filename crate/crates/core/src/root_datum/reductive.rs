use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::intmat::{coordinates_in, kernel_basis, IntMatrix};
use crate::lattice::LatticeWithAction;

use super::BasedRootDatum;

/// Cap on the order of component groups.
pub const MAX_COMPONENT_GROUP: usize = 64;

/// A based root datum with a finite group `Δ` acting by pinned automorphisms of `X*`.
///
/// `action[g]` acts on characters written as column vectors; cocharacters transform by
/// the inverse transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenReductiveDatum {
    base: BasedRootDatum,
    group: FiniteGroup,
    action: Vec<IntMatrix>,
    root_perms: Vec<Vec<usize>>,
    simple_perms: Vec<Vec<usize>>,
}

impl From<BasedRootDatum> for GenReductiveDatum {
    fn from(base: BasedRootDatum) -> Self {
        Self::connected(base)
    }
}

impl GenReductiveDatum {
    /// Trivial component group.
    pub fn connected(base: BasedRootDatum) -> Self {
        let n = base.rank_x();
        Self::new(base, FiniteGroup::trivial(), vec![IntMatrix::identity(n)])
            .expect("trivial action is pinned")
    }

    pub fn new(base: BasedRootDatum, group: FiniteGroup, action: Vec<IntMatrix>) -> Result<Self> {
        let order = group.order();
        if order > MAX_COMPONENT_GROUP {
            return Err(Error::GroupTooLarge {
                order,
                cap: MAX_COMPONENT_GROUP,
            });
        }
        if action.len() != order {
            return Err(Error::UnpinnedAction(format!(
                "{} matrices for a group of order {order}",
                action.len()
            )));
        }
        let n = base.rank_x();
        for (g, a) in action.iter().enumerate() {
            if a.nrows() != n || a.ncols() != n {
                return Err(Error::UnpinnedAction(format!(
                    "matrix for element {g} is not {n}x{n}"
                )));
            }
            if a.det().abs() != 1 {
                return Err(Error::UnpinnedAction(format!(
                    "matrix for element {g} is not invertible over Z"
                )));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                if action[g].mul(&action[h]) != action[group.mul(g, h)] {
                    return Err(Error::UnpinnedAction(format!(
                        "not a homomorphism at ({g}, {h})"
                    )));
                }
            }
        }
        let r = base.semisimple_rank();
        let mut root_perms = Vec::with_capacity(order);
        let mut simple_perms = Vec::with_capacity(order);
        for (g, a) in action.iter().enumerate() {
            let coa = a
                .inverse_unimodular()
                .expect("checked unimodular")
                .transpose();
            let mut perm = Vec::with_capacity(base.num_roots());
            for root in base.roots() {
                let image = a.mul_vec(&root.character);
                let k = base.index_of_character(&image).ok_or_else(|| {
                    Error::UnpinnedAction(format!("element {g} does not preserve the roots"))
                })?;
                if coa.mul_vec(&root.cocharacter) != base.root(k).cocharacter {
                    return Err(Error::UnpinnedAction(format!(
                        "element {g} does not preserve the coroots"
                    )));
                }
                perm.push(k);
            }
            let mut sperm = Vec::with_capacity(r);
            for i in 0..r {
                let k = perm[base.simple_index(i)];
                let j = (0..r).find(|&j| base.simple_index(j) == k).ok_or_else(|| {
                    Error::UnpinnedAction(format!("element {g} does not preserve the simple roots"))
                })?;
                sperm.push(j);
            }
            root_perms.push(perm);
            simple_perms.push(sperm);
        }
        Ok(GenReductiveDatum {
            base,
            group,
            action,
            root_perms,
            simple_perms,
        })
    }

    pub fn base(&self) -> &BasedRootDatum {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    /// Action of `g` on cocharacters.
    pub fn coaction(&self, g: usize) -> IntMatrix {
        self.action[g]
            .inverse_unimodular()
            .expect("unimodular")
            .transpose()
    }

    /// Permutation of root indices induced by `g`.
    pub fn root_permutation(&self, g: usize) -> &[usize] {
        &self.root_perms[g]
    }

    /// Permutation of simple-root indices induced by `g`.
    pub fn simple_permutation(&self, g: usize) -> &[usize] {
        &self.simple_perms[g]
    }

    pub fn dim_g(&self) -> usize {
        self.base.dim()
    }

    /// Dimension of the centre: rank of the `Δ`-invariants of `M ⊗ Q`.
    pub fn dim_z(&self) -> usize {
        self.torus_quotient_lattice().invariant_rank()
    }

    /// `M = X*(G⁰/G')` with its induced `Δ`-action.
    pub fn torus_quotient_lattice(&self) -> LatticeWithAction {
        let basis = self.base.torus_quotient_basis();
        let k = basis.nrows();
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = IntMatrix::zeros(k, k);
                for j in 0..k {
                    let image = a.mul_vec(basis.row(j));
                    let coords = coordinates_in(&basis, &image).expect("M is Δ-stable");
                    for i in 0..k {
                        m[(i, j)] = coords[i];
                    }
                }
                m
            })
            .collect();
        LatticeWithAction::new(k, self.group.clone(), action)
            .expect("induced action is a homomorphism")
    }

    /// Rank of `Z Φ` (equals the number of simple roots).
    pub fn root_lattice_rank(&self) -> usize {
        self.base.semisimple_rank()
    }

    /// Swaps roots and coroots; `Δ` acts on the new characters (old cocharacters) by `A^{-T}`.
    pub fn dual(&self) -> Self {
        let action = (0..self.group.order()).map(|g| self.coaction(g)).collect();
        Self::new(self.base.dual(), self.group.clone(), action)
            .expect("dual of a pinned action is pinned")
    }

    /// Whether the subset of root indices is carried to itself by every element of `Δ`.
    pub fn stabilises(&self, roots: &[usize]) -> bool {
        self.root_perms.iter().all(|perm| {
            let mut image: Vec<usize> = roots.iter().map(|&k| perm[k]).collect();
            image.sort_unstable();
            let mut sorted = roots.to_vec();
            sorted.sort_unstable();
            image == sorted
        })
    }

    /// Integer kernel of the stacked `(A_g - 1)` on `X*`, i.e. the `Δ`-fixed characters.
    pub fn fixed_characters(&self) -> IntMatrix {
        let n = self.base.rank_x();
        let blocks: Vec<IntMatrix> = self
            .action
            .iter()
            .map(|a| a.sub(&IntMatrix::identity(n)))
            .collect();
        kernel_basis(&IntMatrix::vstack(&blocks, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_torus() -> GenReductiveDatum {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        GenReductiveDatum::new(
            BasedRootDatum::torus(2),
            FiniteGroup::cyclic(2),
            vec![IntMatrix::identity(2), swap],
        )
        .unwrap()
    }

    #[test]
    fn centre_dimensions() {
        assert_eq!(
            GenReductiveDatum::connected(BasedRootDatum::gl(2)).dim_z(),
            1
        );
        assert_eq!(swap_torus().dim_z(), 1);
        assert_eq!(swap_torus().torus_quotient_lattice().rank(), 2);
    }

    #[test]
    fn diagram_automorphism_of_a2() {
        let base = BasedRootDatum::build_simple('A', 2, super::super::Isogeny::Adjoint).unwrap();
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let d = GenReductiveDatum::new(
            base.clone(),
            FiniteGroup::cyclic(2),
            vec![IntMatrix::identity(2), swap],
        )
        .unwrap();
        assert_eq!(d.simple_permutation(1), &[1, 0]);
        // the Weyl element -1 is not pinned
        let minus = IntMatrix::identity(2).scale(-1);
        assert!(matches!(
            GenReductiveDatum::new(
                base,
                FiniteGroup::cyclic(2),
                vec![IntMatrix::identity(2), minus]
            ),
            Err(Error::UnpinnedAction(_))
        ));
    }

    #[test]
    fn rejects_non_homomorphism() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let r = GenReductiveDatum::new(
            BasedRootDatum::torus(2),
            FiniteGroup::cyclic(3),
            vec![IntMatrix::identity(2), swap.clone(), swap],
        );
        assert!(matches!(r, Err(Error::UnpinnedAction(_))));
    }
}

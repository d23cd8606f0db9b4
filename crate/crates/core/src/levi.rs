//! Parabolic and Levi subgroups cut out by cocharacters, standard Levi enumeration and the
//! splitting off of an `A_1` factor along a Levi of codimension two.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmat::{dot, rational_solution, IntMatrix};
use crate::root_datum::{BasedRootDatum, GenReductiveDatum, Isogeny};

/// Root partition attached to a cocharacter `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviDescriptor {
    /// Simple roots orthogonal to `λ`.
    pub subset: Vec<usize>,
    pub lambda: Vec<i64>,
    /// Root indices with `⟨α, λ⟩ = 0`.
    #[serde(rename = "phi_L")]
    pub phi_l: Vec<usize>,
    /// Root indices with `⟨α, λ⟩ > 0`.
    #[serde(rename = "phi_U")]
    pub phi_u: Vec<usize>,
    #[serde(rename = "dim_L")]
    pub dim_l: usize,
    #[serde(rename = "dim_U")]
    pub dim_u: usize,
    #[serde(rename = "dim_G")]
    pub dim_g: usize,
    /// Whether `Δ` preserves `Φ_L`.
    pub delta_stable: bool,
}

impl LeviDescriptor {
    pub fn is_whole_group(&self) -> bool {
        self.dim_u == 0
    }

    pub fn codim(&self) -> usize {
        self.dim_g - self.dim_l
    }
}

pub fn parabolic_partition(d: &GenReductiveDatum, lambda: &[i64]) -> Result<LeviDescriptor> {
    let base = d.base();
    if lambda.len() != base.rank_x() {
        return Err(Error::DimensionMismatch {
            expected: base.rank_x(),
            got: lambda.len(),
        });
    }
    let mut phi_l = Vec::new();
    let mut phi_u = Vec::new();
    for (k, root) in base.roots().iter().enumerate() {
        match dot(&root.character, lambda) {
            0 => phi_l.push(k),
            x if x > 0 => phi_u.push(k),
            _ => {}
        }
    }
    let subset = (0..base.semisimple_rank())
        .filter(|&i| dot(base.simple_roots().row(i), lambda) == 0)
        .collect();
    let dim_l = base.rank_x() + phi_l.len();
    let delta_stable = d.stabilises(&phi_l);
    Ok(LeviDescriptor {
        subset,
        lambda: lambda.to_vec(),
        dim_u: phi_u.len(),
        dim_l,
        dim_g: d.dim_g(),
        phi_l,
        phi_u,
        delta_stable,
    })
}

/// A cocharacter with `⟨α_i, λ⟩ = 0` for `i ∈ subset` and `> 0` otherwise.
pub fn standard_cocharacter(base: &BasedRootDatum, subset: &[usize]) -> Vec<i64> {
    let r = base.semisimple_rank();
    if r == 0 {
        return vec![0; base.rank_x()];
    }
    let t: Vec<i64> = (0..r).map(|i| i64::from(!subset.contains(&i))).collect();
    if t.iter().all(|&x| x == 0) {
        return vec![0; base.rank_x()];
    }
    let (x, _) = rational_solution(base.simple_roots(), &t);
    let sign = (0..r)
        .map(|i| dot(base.simple_roots().row(i), &x))
        .find(|&v| v != 0)
        .map_or(1, i64::signum);
    x.into_iter().map(|v| v * sign).collect()
}

/// One descriptor per subset of simple roots, ordered by the bitmask of the subset.
pub fn enumerate_standard_levis(d: &GenReductiveDatum) -> Vec<LeviDescriptor> {
    let r = d.base().semisimple_rank();
    (0u64..1 << r)
        .map(|mask| {
            let subset: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            let lambda = standard_cocharacter(d.base(), &subset);
            parabolic_partition(d, &lambda).expect("cocharacter has the right length")
        })
        .collect()
}

/// A `Δ`-stable standard Levi with `dim G - dim L = 2`, if one exists.
pub fn has_codim2_levi(d: &GenReductiveDatum) -> Option<LeviDescriptor> {
    enumerate_standard_levis(d)
        .into_iter()
        .find(|l| l.codim() == 2 && l.delta_stable)
}

/// Result of splitting the adjoint quotient as `G_1 × PGL_2`.
#[derive(Clone, Debug)]
pub struct LeviSplit {
    /// Adjoint datum on the roots of the Levi.
    pub g1: BasedRootDatum,
    /// The `PGL_2` factor carried by `±β`.
    pub a1: BasedRootDatum,
    /// Index of the unique root `β` in `Φ_U`.
    pub beta: usize,
    /// Root indices forming a base of `Φ_L`.
    pub levi_base: Vec<usize>,
    /// Number of `(α, r, s, ±)` combinations checked.
    pub checked: usize,
    /// Simple-root permutation and lattice map identifying the adjoint datum with `G_1 × PGL_2`.
    pub witness: (Vec<usize>, IntMatrix),
}

/// Checks that no root `rα ± sβ` (`α ∈ Φ_L`, `1 ≤ r, s ≤ 3`) exists and splits the adjoint
/// quotient into the adjoint group of `Φ_L` times `PGL_2`.
pub fn split_codim2(d: &GenReductiveDatum, levi: &LeviDescriptor) -> Result<LeviSplit> {
    if levi.codim() != 2 {
        return Err(Error::NotCodimTwo(levi.codim()));
    }
    let base = d.base();
    let beta = levi.phi_u[0];
    let beta_coeffs = &base.root(beta).coeffs;
    let mut checked = 0;
    for &a in &levi.phi_l {
        let alpha = &base.root(a).coeffs;
        for r in 1..=3 {
            for s in 1..=3 {
                for sign in [1, -1] {
                    checked += 1;
                    let v: Vec<i64> = alpha
                        .iter()
                        .zip(beta_coeffs)
                        .map(|(&x, &y)| r * x + sign * s * y)
                        .collect();
                    if let Some(k) = base.index_of_coeffs(&v) {
                        return Err(Error::MixedRoot {
                            witness: base.root(k).character.clone(),
                        });
                    }
                }
            }
        }
    }
    // base of Φ_L: positive roots of Φ_L that are not sums of two positive roots of Φ_L
    let pos: Vec<usize> = levi
        .phi_l
        .iter()
        .copied()
        .filter(|&k| base.root(k).is_positive())
        .collect();
    let levi_base: Vec<usize> = pos
        .iter()
        .copied()
        .filter(|&k| {
            !pos.iter().any(|&a| {
                let diff: Vec<i64> = base
                    .root(k)
                    .coeffs
                    .iter()
                    .zip(&base.root(a).coeffs)
                    .map(|(x, y)| x - y)
                    .collect();
                base.index_of_coeffs(&diff)
                    .is_some_and(|j| pos.contains(&j))
            })
        })
        .collect();
    let m = levi_base.len();
    let mut cartan = IntMatrix::zeros(m, m);
    for (i, &a) in levi_base.iter().enumerate() {
        for (j, &b) in levi_base.iter().enumerate() {
            cartan[(i, j)] = base.pairing(a, b);
        }
    }
    let g1 = BasedRootDatum::from_coweight_lattice("G1", &cartan, &IntMatrix::identity(m))?;
    let a1 = BasedRootDatum::build_simple('A', 1, Isogeny::Adjoint)?.with_label("PGL2");
    let product = BasedRootDatum::product(&[g1.clone(), a1.clone()])?;
    let witness = base
        .adjoint()
        .isomorphism_witness(&product)
        .ok_or_else(|| Error::Invalid("adjoint quotient does not split as G1 x PGL2".into()))?;
    Ok(LeviSplit {
        g1,
        a1,
        beta,
        levi_base,
        checked,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::parse_type;

    fn datum(s: &str) -> GenReductiveDatum {
        GenReductiveDatum::connected(parse_type(s).unwrap())
    }

    #[test]
    fn gl_partitions() {
        let gl2 = datum("GL2");
        let whole = parabolic_partition(&gl2, &[0, 0]).unwrap();
        assert_eq!((whole.dim_u, whole.phi_l.len()), (0, 2));
        let borel = parabolic_partition(&gl2, &[1, 0]).unwrap();
        assert_eq!((borel.dim_u, borel.dim_l), (1, 2));
        let gl3 = datum("GL3");
        let p = parabolic_partition(&gl3, &[1, 1, 0]).unwrap();
        assert_eq!((p.dim_u, p.dim_l), (2, 5));
    }

    #[test]
    fn standard_levis() {
        assert_eq!(enumerate_standard_levis(&datum("GL2")).len(), 2);
        assert_eq!(enumerate_standard_levis(&datum("GL3")).len(), 4);
        let mut dims: Vec<usize> = enumerate_standard_levis(&datum("B2"))
            .iter()
            .map(|l| l.dim_u)
            .collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![0, 3, 3, 4]);
    }

    #[test]
    fn codim_two() {
        assert!(has_codim2_levi(&datum("GL2")).is_some());
        assert!(has_codim2_levi(&datum("SL3")).is_none());
        assert!(has_codim2_levi(&datum("G2")).is_none());
        let d = datum("A1xA2");
        let l = has_codim2_levi(&d).unwrap();
        let split = split_codim2(&d, &l).unwrap();
        assert_eq!(split.g1.num_roots(), 6);
        assert_eq!(split.g1.pi1_derived(), vec![3]);
    }

    #[test]
    fn mixed_root_rejected() {
        // in A2 the Levi of α1 has codimension 4, so force a fake codim-2 descriptor
        let d = datum("A2");
        let mut l = parabolic_partition(&d, &[1, 2]).unwrap();
        l.dim_l = l.dim_g - 2;
        assert!(matches!(split_codim2(&d, &l), Err(Error::MixedRoot { .. })));
    }
}

//! Counting irreducible components through the finite group `μ = (μ_{p^∞}(E) ⊗ M)^Δ`,
//! dimension formulas for deformation spaces, and L-/C-group adapters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::LocalFieldDesc;
use crate::group::{FiniteGroup, GroupTable};
use crate::intmat::{smith_normal_form, IntMatrix};
use crate::lattice::LatticeWithAction;
use crate::root_datum::{GenReductiveDatum, InvariantFactors};

/// A finite Galois extension `E/F` through `Δ = Gal(E/F)` and its action on `μ_{p^{m_E}}(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisExtDesc {
    base: LocalFieldDesc,
    group: FiniteGroup,
    m_e: u32,
    /// `δ` acts on `μ_{p^{m_E}}` by `ζ ↦ ζ^{chi[δ]}`.
    chi: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaloisExtJson {
    pub base: LocalFieldDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<i64>>,
}

impl GaloisExtDesc {
    pub fn new(base: LocalFieldDesc, group: FiniteGroup, m_e: u32, chi: Vec<i64>) -> Result<Self> {
        if m_e < base.m {
            return Err(Error::InvalidLocalField(format!(
                "m_E = {m_e} is smaller than m_F = {}",
                base.m
            )));
        }
        if chi.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                got: chi.len(),
            });
        }
        let modulus = (base.p as i64).pow(m_e);
        let chi: Vec<i64> = chi.into_iter().map(|c| c.rem_euclid(modulus)).collect();
        if m_e > 0 {
            if chi.iter().any(|&c| c % base.p as i64 == 0) {
                return Err(Error::InvalidLocalField(
                    "cyclotomic exponents must be units".into(),
                ));
            }
            for g in group.elements() {
                for h in group.elements() {
                    if chi[g] * chi[h] % modulus != chi[group.mul(g, h)] {
                        return Err(Error::InvalidLocalField(format!(
                            "cyclotomic exponents are not multiplicative at ({g}, {h})"
                        )));
                    }
                }
            }
        }
        Ok(GaloisExtDesc {
            base,
            group,
            m_e,
            chi,
        })
    }

    /// `E = F`.
    pub fn trivial(base: LocalFieldDesc) -> Self {
        Self::new(base, FiniteGroup::trivial(), base.m, vec![1]).expect("trivial extension")
    }

    /// Unramified extension of degree `f`; `Δ` cyclic, generated by Frobenius. The new
    /// `p`-power roots of unity (if any) are given by `m_e`, with Frobenius acting on them by
    /// `frob`.
    pub fn unramified(
        base: LocalFieldDesc,
        f: usize,
        m_e: Option<u32>,
        frob: Option<i64>,
    ) -> Result<Self> {
        let group = FiniteGroup::cyclic(f);
        let m_e = m_e.unwrap_or(base.m);
        let frob = frob.unwrap_or(1);
        let modulus = (base.p as i64).pow(m_e);
        let mut chi = vec![1i64; f];
        for k in 1..f {
            chi[k] = (chi[k - 1] * frob).rem_euclid(modulus.max(1));
        }
        Self::new(base, group, m_e, chi)
    }

    /// `E = Q_p(ζ_{p^k})` over `Q_p`, with `Δ = (Z/p^k)^×` listed in increasing order.
    pub fn cyclotomic(p: u32, k: u32) -> Result<Self> {
        let base = LocalFieldDesc::qp(p)?;
        let n = (p as i64).pow(k);
        let units: Vec<i64> = (1..n).filter(|a| a % p as i64 != 0).collect();
        let index = |a: i64| units.iter().position(|&u| u == a).expect("unit");
        let table = units
            .iter()
            .map(|&a| units.iter().map(|&b| index(a * b % n)).collect())
            .collect();
        let group = FiniteGroup::from_table(table)?;
        Self::new(base, group, k, units)
    }

    pub fn from_json(j: GaloisExtJson) -> Result<Self> {
        let group = match j.group {
            Some(t) => FiniteGroup::try_from(t)?,
            None => FiniteGroup::trivial(),
        };
        let m_e = j.m_e.unwrap_or(j.base.m);
        let chi = j.chi.unwrap_or_else(|| vec![1; group.order()]);
        Self::new(j.base, group, m_e, chi)
    }

    pub fn to_json(&self) -> GaloisExtJson {
        GaloisExtJson {
            base: self.base,
            group: Some(self.group.clone().into()),
            m_e: Some(self.m_e),
            chi: Some(self.chi.clone()),
        }
    }

    pub fn base(&self) -> &LocalFieldDesc {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn m_e(&self) -> u32 {
        self.m_e
    }

    pub fn chi(&self) -> &[i64] {
        &self.chi
    }

    /// `|μ_{p^∞}(E)| = p^{m_E}`.
    pub fn mu_order(&self) -> i64 {
        (self.base.p as i64).pow(self.m_e)
    }
}

fn check_same_group(ext: &GaloisExtDesc, m: &LatticeWithAction) -> Result<()> {
    if ext.group.table() != m.group().table() {
        return Err(Error::InvalidGroup(
            "lattice and extension use different groups".into(),
        ));
    }
    Ok(())
}

/// Invariant factors of the kernel of the stacked maps `χ(δ) A_δ - 1` on `(Z/p^{m_E})^rank`.
pub fn mu_group(ext: &GaloisExtDesc, m2: &LatticeWithAction) -> Result<InvariantFactors> {
    check_same_group(ext, m2)?;
    let n = m2.rank();
    let modulus = ext.mu_order();
    if modulus == 1 || n == 0 {
        return Ok(Vec::new());
    }
    let blocks: Vec<IntMatrix> = m2
        .action()
        .iter()
        .zip(&ext.chi)
        .map(|(a, &c)| a.scale(c).sub(&IntMatrix::identity(n)))
        .collect();
    let snf = smith_normal_form(&IntMatrix::vstack(&blocks, n));
    // in coordinates y = V⁻¹x the kernel is {y : d_i y_i ≡ 0}
    let mut factors: Vec<i64> = (0..n)
        .map(|i| {
            let d = snf.diagonal.get(i).copied().unwrap_or(0);
            crate::intmat::gcd(d, modulus)
        })
        .filter(|&f| f > 1)
        .collect();
    factors.sort_unstable();
    Ok(factors)
}

pub fn group_order(factors: &[i64]) -> u64 {
    factors.iter().map(|&f| f as u64).product()
}

/// Characters of `μ ≅ ⊕ Z/n_i`, as exponent tuples `(a_i)` with `0 ≤ a_i < n_i`.
pub fn characters(factors: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &n in factors {
        out = out
            .into_iter()
            .flat_map(|v| (0..n).map(move |a| [v.clone(), vec![a]].concat()))
            .collect();
    }
    out
}

/// How the component labelling by characters of `μ` is pinned down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Labelling {
    /// The torus quotient is a semidirect product and the Teichmüller lift fixes the base point.
    Canonical,
    UpToTorsor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCount {
    pub mu: InvariantFactors,
    pub count: u64,
    /// Set when `π₁(G')` is not étale, so the bijection with components is not guaranteed.
    pub conditional: bool,
    pub labelling: Labelling,
}

pub fn component_count(
    ext: &GaloisExtDesc,
    m2: &LatticeWithAction,
    pi1_etale: bool,
    semidirect: bool,
) -> Result<ComponentCount> {
    let mu = mu_group(ext, m2)?;
    let count = group_order(&mu);
    let labelling = if semidirect || count == 1 {
        Labelling::Canonical
    } else {
        Labelling::UpToTorsor
    };
    Ok(ComponentCount {
        mu,
        count,
        conditional: !pi1_etale,
        labelling,
    })
}

/// `(|μ|, r, s)` for `O[μ][[x_1..x_r]][t_1^{±1}..t_s^{±1}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgenShape {
    pub mu_order: u64,
    pub r: usize,
    pub s: usize,
}

pub fn agen_shape(ext: &GaloisExtDesc, m2: &LatticeWithAction, d_f: usize) -> Result<AgenShape> {
    let mu = mu_group(ext, m2)?;
    let inv = m2.invariant_rank();
    Ok(AgenShape {
        mu_order: group_order(&mu),
        r: m2.rank() * d_f + inv,
        s: m2.rank() - inv,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimFormulas {
    pub dim_g: usize,
    pub dim_z: usize,
    pub rel_dim_rsquare: usize,
    pub dim_xgen: usize,
    pub dim_xgen_special_fibre: usize,
    pub dim_xps: usize,
    pub fibre_offset: usize,
}

pub fn dim_formulas(d: &GenReductiveDatum, d_f: usize) -> DimFormulas {
    let dim_g = d.dim_g();
    let dim_z = d.dim_z();
    DimFormulas {
        dim_g,
        dim_z,
        rel_dim_rsquare: dim_g * (d_f + 1),
        dim_xgen: dim_g * (d_f + 1) + 1,
        dim_xgen_special_fibre: dim_g * (d_f + 1),
        dim_xps: dim_g * d_f + dim_z + 1,
        fibre_offset: dim_g - dim_z,
    }
}

/// Lower bound on the codimension of the special locus in the generic fibre.
pub fn special_codim_bound(d_f: usize, compatible_codim2: bool) -> usize {
    if compatible_codim2 {
        1 + d_f
    } else {
        2 * d_f
    }
}

/// Whether the local rings of the generic fibre are guaranteed factorial.
pub fn factoriality_check(
    d: &GenReductiveDatum,
    p: u64,
    d_f: usize,
    compatible_codim2: bool,
) -> bool {
    d.base().is_pi1_etale(p) && (d_f >= 3 || (d_f == 2 && !compatible_codim2))
}

/// `^L H = Ĥ ⋊ Δ`: the dual datum with the contragredient action.
pub fn lgroup_datum(h: &GenReductiveDatum, ext: &GaloisExtDesc) -> Result<GenReductiveDatum> {
    if h.group().table() != ext.group.table() {
        return Err(Error::UnpinnedAction(
            "datum and extension use different groups".into(),
        ));
    }
    Ok(h.dual())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CGroupComponents {
    pub mu: InvariantFactors,
    pub count: u64,
}

/// Components of the fixed-cyclotomic C-group deformation ring: characters of the `p`-power
/// torsion of `Z(H)⁰(F)`, computed from `M = X*(Ĥ/Ĥ')`.
pub fn cgroup_component_group(
    h: &GenReductiveDatum,
    ext: &GaloisExtDesc,
) -> Result<CGroupComponents> {
    let dual = lgroup_datum(h, ext)?;
    let m = dual.torus_quotient_lattice();
    let mu = mu_group(ext, &m)?;
    Ok(CGroupComponents {
        count: group_order(&mu),
        mu,
    })
}

//! Extensions `1 → N → G → Δ → 1` of finite groups with a chosen set-theoretic section,
//! encoded by a pair `(ω, c)` with `ω: Δ → Aut(N)` and `c: Δ × Δ → N`.
//!
//! Elements of a rigidified extension are pairs `(n, δ)` stored at index `n + |N|·δ`, with
//! `ι(n) = (n, 1)`, `π(n, δ) = δ`, section `s(δ) = (1, δ)`, and `(n, δ) = ι(n) s(δ)`.
//! The group law is `(n₁, δ₁)(n₂, δ₂) = (n₁ · ω(δ₁)(n₂) · c(δ₁, δ₂), δ₁δ₂)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupTable, MAX_GROUP_ORDER};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTwoCocycle {
    pub n: FiniteGroup,
    pub delta: FiniteGroup,
    /// `omega[δ][x] = ω(δ)(x)`.
    pub omega: Vec<Vec<usize>>,
    /// `c[δ₁][δ₂]`.
    pub c: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleJson {
    pub n: GroupTable,
    pub delta: GroupTable,
    pub omega: Vec<Vec<usize>>,
    pub c: Vec<Vec<usize>>,
}

impl GenTwoCocycle {
    /// Split extension by a homomorphism `Δ → Aut(N)`.
    pub fn semidirect(n: FiniteGroup, delta: FiniteGroup, omega: Vec<Vec<usize>>) -> Self {
        let c = vec![vec![n.identity(); delta.order()]; delta.order()];
        GenTwoCocycle { n, delta, omega, c }
    }

    pub fn direct(n: FiniteGroup, delta: FiniteGroup) -> Self {
        let id: Vec<usize> = n.elements().collect();
        let omega = vec![id; delta.order()];
        Self::semidirect(n, delta, omega)
    }

    pub fn from_json(j: CocycleJson) -> Result<Self> {
        Ok(GenTwoCocycle {
            n: FiniteGroup::try_from(j.n)?,
            delta: FiniteGroup::try_from(j.delta)?,
            omega: j.omega,
            c: j.c,
        })
    }

    pub fn to_json(&self) -> CocycleJson {
        CocycleJson {
            n: self.n.clone().into(),
            delta: self.delta.clone().into(),
            omega: self.omega.clone(),
            c: self.c.clone(),
        }
    }

    fn shape_ok(&self) -> Result<()> {
        let (nn, nd) = (self.n.order(), self.delta.order());
        if nn * nd > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge {
                order: nn * nd,
                cap: MAX_GROUP_ORDER,
            });
        }
        if self.omega.len() != nd || self.omega.iter().any(|w| w.len() != nn) {
            return Err(Error::DimensionMismatch {
                expected: nd,
                got: self.omega.len(),
            });
        }
        if self.c.len() != nd
            || self
                .c
                .iter()
                .any(|r| r.len() != nd || r.iter().any(|&x| x >= nn))
        {
            return Err(Error::DimensionMismatch {
                expected: nd,
                got: self.c.len(),
            });
        }
        Ok(())
    }

    /// Checks that each `ω(δ)` is an automorphism, then the axioms in the order
    /// `ω(1) = id` (2), normalisation of `c` (4), `ω(δ₁)ω(δ₂) = Int(c(δ₁,δ₂)) ω(δ₁δ₂)` (1)
    /// and the twisted cocycle identity (3).
    pub fn validate(&self) -> Result<()> {
        self.shape_ok()?;
        let (n, d) = (&self.n, &self.delta);
        for (g, w) in self.omega.iter().enumerate() {
            if !n.is_automorphism(w) {
                return Err(Error::InvalidGroup(format!(
                    "ω({g}) is not an automorphism of N"
                )));
            }
        }
        let e = d.identity();
        if let Some(x) = n.elements().find(|&x| self.omega[e][x] != x) {
            return Err(Error::CocycleAxiom {
                axiom: 2,
                witness: format!("ω(1)({x}) = {}", self.omega[e][x]),
            });
        }
        for g in d.elements() {
            if self.c[g][e] != n.identity() || self.c[e][g] != n.identity() {
                return Err(Error::CocycleAxiom {
                    axiom: 4,
                    witness: format!("δ = {g}"),
                });
            }
        }
        for a in d.elements() {
            for b in d.elements() {
                let lhs = FiniteGroup::compose(&self.omega[a], &self.omega[b]);
                let rhs =
                    FiniteGroup::compose(&n.conjugation(self.c[a][b]), &self.omega[d.mul(a, b)]);
                if lhs != rhs {
                    return Err(Error::CocycleAxiom {
                        axiom: 1,
                        witness: format!("(δ₁, δ₂) = ({a}, {b})"),
                    });
                }
            }
        }
        for a in d.elements() {
            for b in d.elements() {
                for g in d.elements() {
                    let lhs = n.mul(self.c[a][b], self.c[d.mul(a, b)][g]);
                    let rhs = n.mul(self.omega[a][self.c[b][g]], self.c[a][d.mul(b, g)]);
                    if lhs != rhs {
                        return Err(Error::CocycleAxiom {
                            axiom: 3,
                            witness: format!("(δ₁, δ₂, δ₃) = ({a}, {b}, {g})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A group on the set `N × Δ` in normal form (see the module docs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidifiedExtension {
    pub group: FiniteGroup,
    pub n: FiniteGroup,
    pub delta: FiniteGroup,
}

impl RigidifiedExtension {
    pub fn index(&self, x: usize, d: usize) -> usize {
        x + self.n.order() * d
    }

    pub fn iota(&self, x: usize) -> usize {
        self.index(x, self.delta.identity())
    }

    pub fn pi(&self, g: usize) -> usize {
        g / self.n.order()
    }

    pub fn section(&self, d: usize) -> usize {
        self.index(self.n.identity(), d)
    }

    /// Checks that `ι` and `π` are homomorphisms and that `(n, δ) = ι(n) s(δ)`.
    pub fn check(&self) -> Result<()> {
        let (nn, nd) = (self.n.order(), self.delta.order());
        let g = &self.group;
        if g.order() != nn * nd {
            return Err(Error::NotRigidified(format!(
                "order {} is not {nn}·{nd}",
                g.order()
            )));
        }
        for a in self.n.elements() {
            for b in self.n.elements() {
                if g.mul(self.iota(a), self.iota(b)) != self.iota(self.n.mul(a, b)) {
                    return Err(Error::NotRigidified(format!(
                        "ι is not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        for x in g.elements() {
            for y in g.elements() {
                if self.pi(g.mul(x, y)) != self.delta.mul(self.pi(x), self.pi(y)) {
                    return Err(Error::NotRigidified(format!(
                        "π is not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        for x in self.n.elements() {
            for d in self.delta.elements() {
                if g.mul(self.iota(x), self.section(d)) != self.index(x, d) {
                    return Err(Error::NotRigidified(format!(
                        "({x}, {d}) is not ι({x})·s({d})"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn build_extension(z: &GenTwoCocycle) -> Result<RigidifiedExtension> {
    z.validate()?;
    let (n, d) = (&z.n, &z.delta);
    let nn = n.order();
    let size = nn * d.order();
    let mut table = vec![vec![0; size]; size];
    for d1 in d.elements() {
        for n1 in n.elements() {
            for d2 in d.elements() {
                for n2 in n.elements() {
                    let x = n.mul(n.mul(n1, z.omega[d1][n2]), z.c[d1][d2]);
                    table[n1 + nn * d1][n2 + nn * d2] = x + nn * d.mul(d1, d2);
                }
            }
        }
    }
    Ok(RigidifiedExtension {
        group: FiniteGroup::from_table(table)?,
        n: n.clone(),
        delta: d.clone(),
    })
}

/// `ω(δ)(x) = s(δ) ι(x) s(δ)⁻¹` and `c(δ₁, δ₂) = s(δ₁) s(δ₂) s(δ₁δ₂)⁻¹`.
pub fn extension_to_cocycle(ext: &RigidifiedExtension) -> Result<GenTwoCocycle> {
    ext.check()?;
    let g = &ext.group;
    let nn = ext.n.order();
    let omega = ext
        .delta
        .elements()
        .map(|d| {
            let s = ext.section(d);
            let si = g.inv(s);
            ext.n
                .elements()
                .map(|x| g.mul(g.mul(s, ext.iota(x)), si) % nn)
                .collect()
        })
        .collect();
    let c = ext
        .delta
        .elements()
        .map(|a| {
            ext.delta
                .elements()
                .map(|b| {
                    let ab = g.inv(ext.section(ext.delta.mul(a, b)));
                    g.mul(g.mul(ext.section(a), ext.section(b)), ab) % nn
                })
                .collect()
        })
        .collect();
    let z = GenTwoCocycle {
        n: ext.n.clone(),
        delta: ext.delta.clone(),
        omega,
        c,
    };
    z.validate()?;
    Ok(z)
}

/// Relabels `g` as a rigidified extension: `normal[x]` is the element of `g` playing `x ∈ N`
/// (an isomorphism onto a normal subgroup) and `section[δ]` a coset representative with
/// `section[1] = 1`, such that `δ ↦ section[δ] · image` is an isomorphism `Δ ≅ g/N`.
pub fn rigidify(
    g: &FiniteGroup,
    n: &FiniteGroup,
    delta: &FiniteGroup,
    normal: &[usize],
    section: &[usize],
) -> Result<RigidifiedExtension> {
    let (nn, nd) = (n.order(), delta.order());
    if normal.len() != nn || section.len() != nd || nn * nd != g.order() {
        return Err(Error::NotRigidified(
            "sizes of N, Δ and G do not match".into(),
        ));
    }
    let mut label = vec![usize::MAX; g.order()];
    for (d, &s) in section.iter().enumerate() {
        for (x, &m) in normal.iter().enumerate() {
            let e = g.mul(m, s);
            if label[e] != usize::MAX {
                return Err(Error::NotRigidified(
                    "section does not give distinct cosets".into(),
                ));
            }
            label[e] = x + nn * d;
        }
    }
    let mut table = vec![vec![0; g.order()]; g.order()];
    for a in g.elements() {
        for b in g.elements() {
            table[label[a]][label[b]] = label[g.mul(a, b)];
        }
    }
    let ext = RigidifiedExtension {
        group: FiniteGroup::from_table(table)?,
        n: n.clone(),
        delta: delta.clone(),
    };
    ext.check()?;
    Ok(ext)
}

/// Homomorphisms `Δ → Aut(N)` as lists `ω[δ]`.
pub fn action_homomorphisms(delta: &FiniteGroup, n: &FiniteGroup) -> Vec<Vec<Vec<usize>>> {
    let auts = n.automorphisms();
    let gens = delta.generators();
    let id: Vec<usize> = n.elements().collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        // extend the generator images multiplicatively
        let mut map: Vec<Option<Vec<usize>>> = vec![None; delta.order()];
        map[delta.identity()] = Some(id.clone());
        let mut queue = vec![delta.identity()];
        let mut ok = true;
        let mut i = 0;
        while ok && i < queue.len() {
            let a = queue[i];
            for (k, &g) in gens.iter().enumerate() {
                let b = delta.mul(a, g);
                let img = FiniteGroup::compose(map[a].as_ref().unwrap(), &auts[choice[k]]);
                match &map[b] {
                    None => {
                        map[b] = Some(img);
                        queue.push(b);
                    }
                    Some(existing) if *existing != img => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                }
            }
            i += 1;
        }
        if ok {
            out.push(map.into_iter().map(Option::unwrap).collect());
        }
        let mut k = 0;
        loop {
            if k == gens.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < auts.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Central cocycle on a cyclic `Δ = Z/k`: `c(a, b) = z` when `a + b ≥ k`, else `1`.
pub fn cyclic_carry_cocycle(
    n: &FiniteGroup,
    k: usize,
    omega: Vec<Vec<usize>>,
    z: usize,
) -> GenTwoCocycle {
    let c = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| if a + b >= k { z } else { n.identity() })
                .collect()
        })
        .collect();
    GenTwoCocycle {
        n: n.clone(),
        delta: FiniteGroup::cyclic(k),
        omega,
        c,
    }
}

/// Groups `N` and `Δ` used by the catalogue.
fn catalogue_kernels() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=12).map(FiniteGroup::cyclic).collect();
    out.push(FiniteGroup::klein_four());
    out.push(FiniteGroup::direct_product(
        &FiniteGroup::cyclic(2),
        &FiniteGroup::cyclic(4),
    ));
    out.push(FiniteGroup::direct_product(
        &FiniteGroup::cyclic(2),
        &FiniteGroup::cyclic(6),
    ));
    out.push(FiniteGroup::dihedral(3));
    out.push(FiniteGroup::dihedral(4));
    out.push(FiniteGroup::quaternion());
    out.push(FiniteGroup::dihedral(5));
    out.push(FiniteGroup::dihedral(6));
    out.push(FiniteGroup::dicyclic(3));
    out.push(FiniteGroup::alternating4());
    out
}

fn catalogue_quotients() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(1),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::klein_four(),
    ]
}

/// Valid cocycles with `|N| ≤ 12`, `|Δ| ≤ 4`: every split extension, central carry cocycles
/// for cyclic `Δ` twisted by every action fixing the carried element, and the
/// dihedral/dicyclic families over `Z/2`.
pub fn cocycle_catalogue() -> Vec<GenTwoCocycle> {
    let mut out = Vec::new();
    for n in catalogue_kernels() {
        for delta in catalogue_quotients() {
            let homs = action_homomorphisms(&delta, &n);
            for omega in &homs {
                out.push(GenTwoCocycle::semidirect(
                    n.clone(),
                    delta.clone(),
                    omega.clone(),
                ));
            }
            let k = delta.order();
            if k > 1 && delta == FiniteGroup::cyclic(k) {
                // ω(1)^k must equal Int(z), which holds for homomorphisms and central z
                for z in n
                    .elements()
                    .filter(|&z| z != n.identity() && n.is_central(z))
                {
                    for omega in &homs {
                        if omega[1][z] == z {
                            out.push(cyclic_carry_cocycle(&n, k, omega.clone(), z));
                        }
                    }
                }
            }
        }
    }
    // dihedral and dicyclic groups of order 4m from Z/2m with inversion
    for m in 1..=6 {
        let n = FiniteGroup::cyclic(2 * m);
        let inv: Vec<usize> = n.elements().map(|x| n.inv(x)).collect();
        let id: Vec<usize> = n.elements().collect();
        out.push(cyclic_carry_cocycle(
            &n,
            2,
            vec![id.clone(), inv.clone()],
            m,
        ));
        out.push(GenTwoCocycle::semidirect(
            n.clone(),
            FiniteGroup::cyclic(2),
            vec![id, inv],
        ));
    }
    out.into_iter().filter(|z| z.validate().is_ok()).collect()
}

/// Extensions in the catalogue: the built groups together with dihedral and dicyclic groups
/// rigidified over their cyclic subgroup of index two.
pub fn extension_catalogue() -> Result<Vec<RigidifiedExtension>> {
    let mut out = Vec::new();
    for z in cocycle_catalogue() {
        out.push(build_extension(&z)?);
    }
    let z2 = FiniteGroup::cyclic(2);
    for m in 1..=6 {
        // dihedral group of order 2m: rotations r^k have index k, the reflection s is index m
        let g = FiniteGroup::dihedral(m);
        let n = FiniteGroup::cyclic(m);
        out.push(rigidify(&g, &n, &z2, &(0..m).collect::<Vec<_>>(), &[0, m])?);
        // dicyclic group of order 4m: a^k has index k, x is index 2m
        let g = FiniteGroup::dicyclic(m);
        let n = FiniteGroup::cyclic(2 * m);
        out.push(rigidify(
            &g,
            &n,
            &z2,
            &(0..2 * m).collect::<Vec<_>>(),
            &[0, 2 * m],
        )?);
    }
    Ok(out)
}

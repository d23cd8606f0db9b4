//! Chevalley bases over finite fields and the adjoint action of root-group and torus elements.
//!
//! Basis order: `e_β` for positive roots (canonical order), then `h_1..h_r` (simple coroots),
//! then `e_{-β}` for the negative roots in the same order. Matrices act on column vectors.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField, FqMatrix};
use crate::intmat::{dot, IntMatrix};
use crate::levi::LeviDescriptor;
use crate::root_datum::{BasedRootDatum, GenReductiveDatum};

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    datum: BasedRootDatum,
    field: FiniteField,
    /// `structure[(a, b)] = N_{a,b}` for root indices with `a + b` a root.
    structure: HashMap<(usize, usize), i64>,
}

/// Sum of two roots as a root index, if it is a root.
fn root_sum(d: &BasedRootDatum, a: usize, b: usize) -> Option<usize> {
    let v: Vec<i64> = d
        .root(a)
        .coeffs
        .iter()
        .zip(&d.root(b).coeffs)
        .map(|(x, y)| x + y)
        .collect();
    d.index_of_coeffs(&v)
}

/// Largest `p` with `b - p·a` a root.
fn string_back(d: &BasedRootDatum, a: usize, b: usize) -> i64 {
    let mut p = 0;
    let mut v = d.root(b).coeffs.clone();
    loop {
        for (x, y) in v.iter_mut().zip(&d.root(a).coeffs) {
            *x -= y;
        }
        if d.index_of_coeffs(&v).is_some() {
            p += 1;
        } else {
            return p;
        }
    }
}

fn exact_div(num: i64, den: i64) -> i64 {
    assert!(
        den != 0 && num % den == 0,
        "structure constants must be integral ({num}/{den})"
    );
    num / den
}

/// Integer structure constants from extraspecial pairs, with `N > 0` on every extraspecial pair.
fn structure_constants(d: &BasedRootDatum) -> HashMap<(usize, usize), i64> {
    let npos = d.num_positive();
    let mut pos: HashMap<(usize, usize), i64> = HashMap::new();
    for xi in 0..npos {
        let pairs: Vec<(usize, usize)> = (0..xi)
            .filter_map(|a| {
                let diff: Vec<i64> = d
                    .root(xi)
                    .coeffs
                    .iter()
                    .zip(&d.root(a).coeffs)
                    .map(|(x, y)| x - y)
                    .collect();
                d.index_of_coeffs(&diff)
                    .filter(|&b| b < npos)
                    .map(|b| (a, b))
            })
            .collect();
        let Some(&(g, dl)) = pairs.first() else {
            continue;
        };
        let nxi = d.root(xi).norm;
        let ngd = string_back(d, g, dl) + 1;
        pos.insert((g, dl), ngd);
        pos.insert((dl, g), -ngd);
        for &(a, b) in &pairs[1..] {
            if a > b || (a, b) == (dl, g) {
                continue;
            }
            // four-term relation for a + b - γ - δ = 0
            let ng = d.negative(g);
            let nd = d.negative(dl);
            let t1 = match root_sum(d, b, ng) {
                Some(bg) => (
                    mixed(d, &pos, b, ng) * mixed(d, &pos, a, nd),
                    d.root(bg).norm,
                ),
                None => (0, 1),
            };
            let t2 = match root_sum(d, a, ng) {
                Some(ag) => (
                    mixed(d, &pos, ng, a) * mixed(d, &pos, b, nd),
                    d.root(ag).norm,
                ),
                None => (0, 1),
            };
            let num = nxi * (t1.0 * t2.1 + t2.0 * t1.1);
            let n = exact_div(num, ngd * t1.1 * t2.1);
            pos.insert((a, b), n);
            pos.insert((b, a), -n);
        }
    }
    let mut all = HashMap::new();
    for a in 0..d.num_roots() {
        for b in 0..d.num_roots() {
            if root_sum(d, a, b).is_some() {
                all.insert((a, b), mixed(d, &pos, a, b));
            }
        }
    }
    all
}

/// `N_{a,b}` for arbitrary roots, reduced to the positive table.
fn mixed(d: &BasedRootDatum, pos: &HashMap<(usize, usize), i64>, a: usize, b: usize) -> i64 {
    let Some(z) = root_sum(d, a, b) else { return 0 };
    let pa = d.root(a).is_positive();
    let pb = d.root(b).is_positive();
    match (pa, pb) {
        (true, true) => pos[&(a, b)],
        (false, false) => -pos[&(d.negative(a), d.negative(b))],
        (false, true) => -mixed(d, pos, b, a),
        (true, false) => {
            if d.root(z).is_positive() {
                // N_{a,b} = (z,z)/(a,a) · N_{b,-z}, with b and -z both negative
                let inner = mixed(d, pos, b, d.negative(z));
                exact_div(d.root(z).norm * inner, d.root(a).norm)
            } else {
                // N_{a,b} = (z,z)/(b,b) · N_{-z,a}, with -z and a both positive
                let inner = mixed(d, pos, d.negative(z), a);
                exact_div(d.root(z).norm * inner, d.root(b).norm)
            }
        }
    }
}

/// Sparse integer vector on the basis.
pub type SparseVec = Vec<(usize, i64)>;

impl ChevalleyAlgebra {
    pub fn new(datum: &BasedRootDatum, field: &FiniteField) -> Self {
        ChevalleyAlgebra {
            datum: datum.clone(),
            field: field.clone(),
            structure: structure_constants(datum),
        }
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.datum.num_roots() + self.datum.semisimple_rank()
    }

    /// `N_{a,b}` (zero when `a + b` is not a root).
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        self.structure.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn structure_constants(&self) -> &HashMap<(usize, usize), i64> {
        &self.structure
    }

    /// Basis index of `e_β` for root index `k`.
    pub fn root_basis_index(&self, k: usize) -> usize {
        let npos = self.datum.num_positive();
        if k < npos {
            k
        } else {
            k + self.datum.semisimple_rank()
        }
    }

    /// Root index of a basis element, `None` for Cartan elements.
    pub fn basis_root(&self, x: usize) -> Option<usize> {
        let npos = self.datum.num_positive();
        let r = self.datum.semisimple_rank();
        if x < npos {
            Some(x)
        } else if x < npos + r {
            None
        } else {
            Some(x - r)
        }
    }

    /// `⟨β, α_i∨⟩`.
    fn pair_simple(&self, k: usize, i: usize) -> i64 {
        dot(
            &self.datum.root(k).character,
            self.datum.simple_coroots().row(i),
        )
    }

    /// Integer bracket of two basis elements.
    pub fn bracket(&self, x: usize, y: usize) -> SparseVec {
        let npos = self.datum.num_positive();
        match (self.basis_root(x), self.basis_root(y)) {
            (None, None) => Vec::new(),
            (None, Some(b)) => {
                let c = self.pair_simple(b, x - npos);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(y, c)]
                }
            }
            (Some(a), None) => {
                let c = self.pair_simple(a, y - npos);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(x, -c)]
                }
            }
            (Some(a), Some(b)) => {
                if b == self.datum.negative(a) {
                    return self
                        .datum
                        .root(a)
                        .coroot_coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (npos + i, c))
                        .collect();
                }
                match root_sum(&self.datum, a, b) {
                    Some(s) => vec![(self.root_basis_index(s), self.structure_constant(a, b))],
                    None => Vec::new(),
                }
            }
        }
    }

    /// Integer matrix of `ad x` for a basis element.
    pub fn ad_int(&self, x: usize) -> IntMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zeros(n, n);
        for y in 0..n {
            for (z, c) in self.bracket(x, y) {
                m[(z, y)] += c;
            }
        }
        m
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let ad: Vec<IntMatrix> = (0..n).map(|x| self.ad_int(x)).collect();
        let apply = |x: usize, v: &SparseVec| -> Vec<i64> {
            let mut out = vec![0; n];
            for &(y, c) in v {
                for z in 0..n {
                    out[z] += c * ad[x][(z, y)];
                }
            }
            out
        };
        for x in 0..n {
            for y in x + 1..n {
                let xy = self.bracket(x, y);
                for z in y + 1..n {
                    let a = apply(z, &xy);
                    let b = apply(x, &self.bracket(y, z));
                    let c = apply(y, &self.bracket(z, x));
                    if (0..n).any(|i| a[i] + b[i] + c[i] != 0) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Checks `|N_{a,b}| = p + 1` where `p` is the length of the `a`-string back from `b`.
    pub fn string_violation(&self) -> Option<(usize, usize)> {
        self.structure
            .iter()
            .find(|(&(a, b), &n)| n.abs() != string_back(&self.datum, a, b) + 1)
            .map(|(&k, _)| k)
    }

    /// `Ad x_α(t) = Σ t^n (ad e_α)^n / n!`, with the division done over `Z`.
    pub fn ad_unipotent(&self, root: usize, t: Elem) -> FqMatrix {
        let f = &self.field;
        let n = self.dim();
        let e = self.ad_int(self.root_basis_index(root));
        let mut out = FqMatrix::identity(n);
        let mut power = IntMatrix::identity(n);
        let mut fact = 1i64;
        let mut tn = 1;
        for k in 1.. {
            power = power.mul(&e);
            if power.is_zero() {
                break;
            }
            fact *= k;
            tn = f.mul(tn, t);
            for i in 0..n {
                for j in 0..n {
                    let v = power[(i, j)];
                    if v != 0 {
                        let c = f.from_int(exact_div(v, fact));
                        out[(i, j)] = f.add(out[(i, j)], f.mul(c, tn));
                    }
                }
            }
        }
        out
    }

    /// `Ad λ(u)`: `e_β ↦ u^{⟨β,λ⟩} e_β`, Cartan part fixed.
    pub fn ad_torus(&self, lambda: &[i64], u: Elem) -> Result<FqMatrix> {
        if u == 0 {
            return Err(Error::ZeroScalar);
        }
        if lambda.len() != self.datum.rank_x() {
            return Err(Error::DimensionMismatch {
                expected: self.datum.rank_x(),
                got: lambda.len(),
            });
        }
        let n = self.dim();
        let mut diag = vec![1; n];
        for k in 0..self.datum.num_roots() {
            let w = dot(&self.datum.root(k).character, lambda);
            diag[self.root_basis_index(k)] = self.field.pow(u, w).expect("unit");
        }
        Ok(FqMatrix::diagonal(&diag))
    }

    /// Torus element given by its values `u_j = χ_j(t)` on the standard basis of `X*`.
    pub fn ad_torus_point(&self, values: &[Elem]) -> Result<FqMatrix> {
        if values.len() != self.datum.rank_x() {
            return Err(Error::DimensionMismatch {
                expected: self.datum.rank_x(),
                got: values.len(),
            });
        }
        if values.contains(&0) {
            return Err(Error::ZeroScalar);
        }
        let f = &self.field;
        let n = self.dim();
        let mut diag = vec![1; n];
        for k in 0..self.datum.num_roots() {
            let chi = &self.datum.root(k).character;
            diag[self.root_basis_index(k)] = chi
                .iter()
                .zip(values)
                .fold(1, |acc, (&c, &u)| f.mul(acc, f.pow(u, c).expect("unit")));
        }
        Ok(FqMatrix::diagonal(&diag))
    }

    /// Coordinates of the bracket of two field vectors.
    pub fn bracket_vectors(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![0; n];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in self.bracket(i, j) {
                    out[k] = f.add(out[k], f.mul(ab, f.from_int(c)));
                }
            }
        }
        out
    }
}

/// Fixed space of a set of matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSpace {
    pub dim: usize,
    /// Echelon basis, one vector per row.
    pub basis: FqMatrix,
    pub generators: usize,
}

/// Common fixed space of the matrices on `F^dim`, or of their inverse transposes when `dual`.
pub fn invariant_dim(
    field: &FiniteField,
    dim: usize,
    matrices: &[FqMatrix],
    dual: bool,
) -> Result<InvariantSpace> {
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for m in matrices {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: m.nrows(),
            });
        }
        let g = if dual {
            m.inverse(field).ok_or(Error::Singular)?.transpose()
        } else {
            m.clone()
        };
        let d = g.sub(&FqMatrix::identity(dim), field);
        rows.extend(d.to_rows());
    }
    let stacked = FqMatrix::from_rows_with_cols(&rows, dim);
    let basis = stacked.nullspace(field);
    Ok(InvariantSpace {
        dim: basis.nrows(),
        basis,
        generators: matrices.len(),
    })
}

/// Field used for unipotent parameters: the smallest `F_{p^k}` with at least five elements.
pub fn sample_field(p: u32) -> Result<FiniteField> {
    FiniteField::at_least(p, 5)
}

/// Generators `x_{±α_i}(t)` for all simple roots and all `t ≠ 0`, plus the torus basis
/// cocharacters at a multiplicative generator.
pub fn simple_root_generators(alg: &ChevalleyAlgebra) -> Vec<FqMatrix> {
    let d = alg.datum();
    let f = alg.field();
    let mut gens = Vec::new();
    for i in 0..d.semisimple_rank() {
        let k = d.simple_index(i);
        for root in [k, d.negative(k)] {
            for t in f.units() {
                gens.push(alg.ad_unipotent(root, t));
            }
        }
    }
    gens.extend(torus_generators(alg));
    gens
}

/// `Ad λ_j(g)` for the standard basis `λ_j` of `X_*` and a generator `g` of `F^×`.
pub fn torus_generators(alg: &ChevalleyAlgebra) -> Vec<FqMatrix> {
    let n = alg.datum().rank_x();
    (0..n)
        .map(|j| {
            let mut lambda = vec![0; n];
            lambda[j] = 1;
            alg.ad_torus(&lambda, alg.field().generator())
                .expect("generator is a unit")
        })
        .collect()
}

/// Simply connected datum with the same Cartan matrix.
pub fn simply_connected_form(d: &BasedRootDatum) -> BasedRootDatum {
    let c = d.cartan();
    BasedRootDatum::from_coweight_lattice(&format!("{}_sc", d.label()), c, &c.transpose())
        .expect("simply connected lattice")
}

/// Invariants of the coadjoint representation of the simply connected form of `d` in
/// characteristic `p`.
pub fn coadjoint_invariants_sc(d: &BasedRootDatum, p: u32) -> Result<InvariantSpace> {
    let sc = simply_connected_form(d);
    let f = sample_field(p)?;
    let alg = ChevalleyAlgebra::new(&sc, &f);
    invariant_dim(&f, alg.dim(), &simple_root_generators(&alg), true)
}

/// Invariants of the adjoint (not dual) representation, same generators.
pub fn adjoint_invariants_sc(d: &BasedRootDatum, p: u32) -> Result<InvariantSpace> {
    let sc = simply_connected_form(d);
    let f = sample_field(p)?;
    let alg = ChevalleyAlgebra::new(&sc, &f);
    invariant_dim(&f, alg.dim(), &simple_root_generators(&alg), false)
}

/// A single group element acting on `Lie G`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupElement {
    /// `x_α(t)` for a root index and a field element code.
    Unipotent { root: usize, t: Elem },
    /// `λ(u)` for a cocharacter and a unit.
    Torus { lambda: Vec<i64>, u: Elem },
}

/// Which subgroup of the Levi acts on `Lie U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeviGenerators {
    /// Torus basis cocharacters and all root groups of the Levi.
    Full,
    /// Only the torus.
    Torus,
    /// An explicit list; the empty list is the trivial subgroup.
    Custom(Vec<GroupElement>),
}

/// Matrix of a group element in the algebra.
pub fn element_matrix(alg: &ChevalleyAlgebra, g: &GroupElement) -> Result<FqMatrix> {
    match g {
        GroupElement::Unipotent { root, t } => {
            if *root >= alg.datum().num_roots() {
                return Err(Error::Invalid(format!("root index {root} out of range")));
            }
            if *t >= alg.field().size() {
                return Err(Error::Invalid(format!("field element {t} out of range")));
            }
            Ok(alg.ad_unipotent(*root, *t))
        }
        GroupElement::Torus { lambda, u } => alg.ad_torus(lambda, *u),
    }
}

/// Invariants of `(Lie U)*` under the chosen generators of the Levi, in characteristic `p`.
pub fn nilradical_dual_invariants(
    d: &GenReductiveDatum,
    levi: &LeviDescriptor,
    p: u32,
    gens: &LeviGenerators,
) -> Result<InvariantSpace> {
    let f = sample_field(p)?;
    let alg = ChevalleyAlgebra::new(d.base(), &f);
    let mut mats: Vec<FqMatrix> = Vec::new();
    match gens {
        LeviGenerators::Full | LeviGenerators::Torus => {
            mats.extend(torus_generators(&alg));
            if *gens == LeviGenerators::Full {
                for &k in &levi.phi_l {
                    for t in f.units() {
                        mats.push(alg.ad_unipotent(k, t));
                    }
                }
            }
        }
        LeviGenerators::Custom(list) => {
            for g in list {
                if let GroupElement::Unipotent { root, .. } = g {
                    if !levi.phi_l.contains(root) {
                        return Err(Error::Invalid(format!(
                            "root {root} is not a root of the Levi"
                        )));
                    }
                }
                mats.push(element_matrix(&alg, g)?);
            }
        }
    }
    let idx: Vec<usize> = levi
        .phi_u
        .iter()
        .map(|&k| alg.root_basis_index(k))
        .collect();
    let restricted: Vec<FqMatrix> = mats.iter().map(|m| m.submatrix(&idx, &idx)).collect();
    invariant_dim(&f, idx.len(), &restricted, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::parse_type;

    fn alg(s: &str, p: u32) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(&parse_type(s).unwrap(), &FiniteField::prime(p).unwrap())
    }

    #[test]
    fn jacobi_and_strings() {
        for s in ["A1", "A2", "B2", "C3", "G2", "A1xB2"] {
            let a = alg(s, 5);
            assert_eq!(a.jacobi_violation(), None, "{s}");
            assert_eq!(a.string_violation(), None, "{s}");
        }
    }

    #[test]
    fn constant_ranges() {
        let a2 = alg("A2", 3);
        assert_eq!(a2.dim(), 8);
        assert!(a2.structure_constants().values().all(|n| n.abs() == 1));
        let g2 = alg("G2", 5);
        assert_eq!(g2.dim(), 14);
        let max = g2
            .structure_constants()
            .values()
            .map(|n| n.abs())
            .max()
            .unwrap();
        assert_eq!(max, 3);
    }

    #[test]
    fn sl2_unipotent_on_f() {
        let a = alg("A1", 3);
        // basis (e, h, f)
        let m = a.ad_unipotent(0, 1);
        assert_eq!(m.column(2), vec![2, 1, 1]);
        assert!(a.ad_unipotent(0, 0).is_identity());
        let f = a.field();
        for t in f.elements() {
            for s in f.elements() {
                assert_eq!(
                    a.ad_unipotent(0, t).mul(&a.ad_unipotent(0, s), f),
                    a.ad_unipotent(0, f.add(t, s))
                );
            }
        }
    }

    #[test]
    fn torus_on_sl2() {
        let a = alg("A1", 5);
        let m = a.ad_torus(&[1], 2).unwrap();
        assert_eq!(m.row(0)[0], 4);
        assert_eq!(m.row(2)[2], 4); // 2^{-2} = 4^{-1} = 4 mod 5
        assert_eq!(a.ad_torus(&[1], 0), Err(Error::ZeroScalar));
    }

    #[test]
    fn sl2_char_two() {
        let d = parse_type("A1").unwrap();
        assert_eq!(coadjoint_invariants_sc(&d, 2).unwrap().dim, 0);
        assert_eq!(adjoint_invariants_sc(&d, 2).unwrap().dim, 1);
    }

    #[test]
    fn unipotents_preserve_bracket() {
        let a = ChevalleyAlgebra::new(&parse_type("B2").unwrap(), &FiniteField::new(2, 3).unwrap());
        let f = a.field();
        let n = a.dim();
        let g = a.ad_unipotent(1, f.generator());
        for x in 0..n {
            for y in 0..n {
                let (mut ex, mut ey) = (vec![0; n], vec![0; n]);
                ex[x] = 1;
                ey[y] = 1;
                let lhs = g.mul_vec(&a.bracket_vectors(&ex, &ey), f);
                let rhs = a.bracket_vectors(&g.mul_vec(&ex, f), &g.mul_vec(&ey, f));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

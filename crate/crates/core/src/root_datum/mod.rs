//! Based root data, generalised reductive data and their lattice invariants.

mod cartan;
mod parse;
mod reductive;

use std::collections::HashMap;

pub use cartan::{finite_type_norms, symmetrised, DynkinType};
pub use parse::{parse_type, DatumJson};
pub use reductive::{GenReductiveDatum, MAX_COMPONENT_GROUP};

use crate::error::{Error, Result};
use crate::intmat::{coordinates_in, dot, kernel_basis, saturate, IntMatrix};

/// Torsion invariant factors `n_1 | n_2 | ...` (each at least 2) of a finite abelian group.
pub type InvariantFactors = Vec<i64>;

/// Which lattice between the root and weight lattices a simple type is built on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    /// Basis rows of `X_*` in fundamental-coweight coordinates; must contain the coroot lattice.
    Explicit(IntMatrix),
}

/// One root with its coroot, in both simple-root coefficients and lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub coroot_coeffs: Vec<i64>,
    pub character: Vec<i64>,
    pub cocharacter: Vec<i64>,
    /// `(β, β)` in the normalisation where the shortest simple root of its component has length 1.
    pub norm: i64,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().any(|&c| c > 0)
    }
}

/// Character lattice `X* = Z^rank_x` with simple roots, cocharacter lattice with simple coroots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    label: String,
    rank_x: usize,
    simple_roots: IntMatrix,
    simple_coroots: IntMatrix,
    cartan: IntMatrix,
    norms: Vec<i64>,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
}

/// Upper bound on the number of positive roots generated before giving up.
const MAX_POSITIVE_ROOTS: usize = 4096;

impl BasedRootDatum {
    /// Validates the data and generates all roots in canonical order: positive roots by
    /// height, ties broken by descending coefficient vector, followed by their negatives.
    pub fn new(
        label: impl Into<String>,
        rank_x: usize,
        simple_roots: IntMatrix,
        simple_coroots: IntMatrix,
    ) -> Result<Self> {
        let r = simple_roots.nrows();
        if simple_coroots.nrows() != r {
            return Err(Error::InvalidDatum(format!(
                "{r} simple roots but {} simple coroots",
                simple_coroots.nrows()
            )));
        }
        if (r > 0 && simple_roots.ncols() != rank_x) || (r > 0 && simple_coroots.ncols() != rank_x)
        {
            return Err(Error::InvalidDatum(format!(
                "root vectors must have length {rank_x}"
            )));
        }
        let simple_roots = IntMatrix::from_rows_with_cols(&simple_roots.to_rows(), rank_x);
        let simple_coroots = IntMatrix::from_rows_with_cols(&simple_coroots.to_rows(), rank_x);
        let mut cartan = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                cartan[(i, j)] = dot(simple_roots.row(i), simple_coroots.row(j));
            }
        }
        let norms = finite_type_norms(&cartan)?;
        let b = symmetrised(&cartan, &norms);

        let mut positive: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        let mut seen: HashMap<Vec<i64>, ()> = positive.iter().map(|v| (v.clone(), ())).collect();
        let mut k = 0;
        while k < positive.len() {
            let beta = positive[k].clone();
            for i in 0..r {
                if beta
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == i64::from(i == j))
                {
                    continue;
                }
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[(j, i)]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone(), ()).is_none() {
                        positive.push(up);
                        if positive.len() > MAX_POSITIVE_ROOTS {
                            return Err(Error::InvalidDatum("root system is too large".into()));
                        }
                    }
                }
            }
            k += 1;
        }
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let make = |coeffs: Vec<i64>| -> Root {
            let mut twice_norm = 0;
            for i in 0..r {
                for j in 0..r {
                    twice_norm += coeffs[i] * b[(i, j)] * coeffs[j];
                }
            }
            let norm = twice_norm / 2;
            let coroot_coeffs: Vec<i64> = (0..r).map(|j| coeffs[j] * norms[j] / norm).collect();
            let character = lin_comb(&coeffs, &simple_roots, rank_x);
            let cocharacter = lin_comb(&coroot_coeffs, &simple_coroots, rank_x);
            Root {
                coeffs,
                coroot_coeffs,
                character,
                cocharacter,
                norm,
            }
        };
        let mut roots: Vec<Root> = positive.iter().cloned().map(make).collect();
        let negatives: Vec<Root> = positive
            .iter()
            .map(|v| make(v.iter().map(|c| -c).collect()))
            .collect();
        roots.extend(negatives);
        let index = roots
            .iter()
            .enumerate()
            .map(|(k, root)| (root.coeffs.clone(), k))
            .collect();

        Ok(BasedRootDatum {
            label: label.into(),
            rank_x,
            simple_roots,
            simple_coroots,
            cartan,
            norms,
            roots,
            index,
        })
    }

    /// A split torus of the given rank (no roots).
    pub fn torus(rank: usize) -> Self {
        Self::new(
            format!("T{rank}"),
            rank,
            IntMatrix::zeros(0, rank),
            IntMatrix::zeros(0, rank),
        )
        .expect("torus datum is valid")
    }

    /// `GL_n` with `X* = Z^n` and simple roots `e_i - e_{i+1}`.
    pub fn gl(n: usize) -> Self {
        let rows: Vec<Vec<i64>> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        let m = IntMatrix::from_rows_with_cols(&rows, n);
        Self::new(format!("GL{n}"), n, m.clone(), m).expect("GL_n datum is valid")
    }

    /// A simple type on the simply connected, adjoint, or an explicit intermediate lattice.
    pub fn build_simple(series: char, rank: usize, isogeny: Isogeny) -> Result<Self> {
        let t = DynkinType::new(series, rank)?;
        let c = t.cartan_matrix();
        let (basis, suffix) = match isogeny {
            Isogeny::SimplyConnected => (c.transpose(), "sc".to_string()),
            Isogeny::Adjoint => (IntMatrix::identity(rank), "ad".to_string()),
            Isogeny::Explicit(b) => (b, "explicit".to_string()),
        };
        Self::from_coweight_lattice(&format!("{}_{}", t.label(), suffix), &c, &basis)
    }

    /// Semisimple datum for Cartan matrix `c` whose cocharacter lattice has basis rows `basis`
    /// in fundamental-coweight coordinates.
    pub fn from_coweight_lattice(label: &str, c: &IntMatrix, basis: &IntMatrix) -> Result<Self> {
        let r = c.nrows();
        if basis.nrows() != r || basis.ncols() != r {
            return Err(Error::LatticeOutOfRange(format!(
                "expected {r} basis rows of length {r}"
            )));
        }
        if basis.det() == 0 {
            return Err(Error::LatticeOutOfRange(
                "basis rows are linearly dependent".into(),
            ));
        }
        // α_j∨ has fundamental-coweight coordinates given by column j of C
        let mut coroots = Vec::with_capacity(r);
        for j in 0..r {
            let coords = coordinates_in(basis, &c.column(j)).ok_or_else(|| {
                Error::LatticeOutOfRange(format!("coroot {j} is not in the lattice"))
            })?;
            coroots.push(coords);
        }
        // dual basis of X*: root i has coordinate basis[k][i] against the k-th basis cocharacter
        let roots: Vec<Vec<i64>> = (0..r).map(|i| basis.column(i)).collect();
        Self::new(
            label,
            r,
            IntMatrix::from_rows_with_cols(&roots, r),
            IntMatrix::from_rows_with_cols(&coroots, r),
        )
    }

    /// Block-diagonal product; coordinates are concatenated.
    pub fn product(factors: &[BasedRootDatum]) -> Result<Self> {
        let n: usize = factors.iter().map(|f| f.rank_x).sum();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut offset = 0;
        for f in factors {
            for i in 0..f.semisimple_rank() {
                let mut a = vec![0; n];
                let mut b = vec![0; n];
                a[offset..offset + f.rank_x].copy_from_slice(f.simple_roots.row(i));
                b[offset..offset + f.rank_x].copy_from_slice(f.simple_coroots.row(i));
                roots.push(a);
                coroots.push(b);
            }
            offset += f.rank_x;
        }
        let label = factors
            .iter()
            .map(|f| f.label.as_str())
            .collect::<Vec<_>>()
            .join("x");
        Self::new(
            label,
            n,
            IntMatrix::from_rows_with_cols(&roots, n),
            IntMatrix::from_rows_with_cols(&coroots, n),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn rank_x(&self) -> usize {
        self.rank_x
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.nrows()
    }

    pub fn is_semisimple(&self) -> bool {
        self.semisimple_rank() == self.rank_x
    }

    pub fn simple_roots(&self) -> &IntMatrix {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &IntMatrix {
        &self.simple_coroots
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Squared lengths of the simple roots.
    pub fn simple_norms(&self) -> &[i64] {
        &self.norms
    }

    /// Twice the invariant form in simple-root coordinates.
    pub fn form(&self) -> IntMatrix {
        symmetrised(&self.cartan, &self.norms)
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.roots[k]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    /// Index of the root with the given simple-root coefficients.
    pub fn index_of_coeffs(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Index of the root with the given character, if it is a root.
    pub fn index_of_character(&self, chi: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.character == chi)
    }

    /// Index of `-root_k`.
    pub fn negative(&self, k: usize) -> usize {
        let n = self.num_positive();
        if k < n {
            k + n
        } else {
            k - n
        }
    }

    /// Index of the `i`-th simple root.
    pub fn simple_index(&self, i: usize) -> usize {
        let mut v = vec![0; self.semisimple_rank()];
        v[i] = 1;
        self.index[&v]
    }

    /// `⟨root_a, coroot_b⟩`.
    pub fn pairing(&self, a: usize, b: usize) -> i64 {
        dot(&self.roots[a].character, &self.roots[b].cocharacter)
    }

    pub fn dim(&self) -> usize {
        self.rank_x + self.roots.len()
    }

    /// The Langlands dual datum: roots and coroots exchanged.
    pub fn dual(&self) -> Self {
        Self::new(
            format!("{}^", self.label),
            self.rank_x,
            self.simple_coroots.clone(),
            self.simple_roots.clone(),
        )
        .expect("dual of a valid datum is valid")
    }

    /// Invariant factors of the torsion of `X_* / Z Φ∨`.
    pub fn pi1_derived(&self) -> InvariantFactors {
        if self.semisimple_rank() == 0 {
            return Vec::new();
        }
        self.simple_coroots.smith().torsion()
    }

    pub fn is_pi1_etale(&self, p: u64) -> bool {
        self.pi1_derived().iter().all(|&n| n % p as i64 != 0)
    }

    /// Basis rows of `M = {χ ∈ X* : ⟨χ, α∨⟩ = 0 for all coroots}`.
    pub fn torus_quotient_basis(&self) -> IntMatrix {
        if self.semisimple_rank() == 0 {
            return IntMatrix::identity(self.rank_x);
        }
        kernel_basis(&self.simple_coroots)
    }

    /// Datum of the derived subgroup: cocharacter lattice `X_* ∩ Q Φ∨`, characters restricted.
    /// Also returns the chosen basis of `X_* ∩ Q Φ∨` as rows in `X_*` coordinates.
    pub fn derived_with_basis(&self) -> (Self, IntMatrix) {
        let r = self.semisimple_rank();
        if r == 0 {
            return (Self::torus(0), IntMatrix::zeros(0, self.rank_x));
        }
        let s = saturate(&self.simple_coroots);
        let coroots: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                coordinates_in(&s, self.simple_coroots.row(i))
                    .expect("coroot lies in its saturation")
            })
            .collect();
        let roots: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|k| dot(self.simple_roots.row(i), s.row(k)))
                    .collect()
            })
            .collect();
        let d = Self::new(
            format!("{}_der", self.label),
            r,
            IntMatrix::from_rows_with_cols(&roots, r),
            IntMatrix::from_rows_with_cols(&coroots, r),
        )
        .expect("derived datum is valid");
        (d, s)
    }

    pub fn derived(&self) -> Self {
        self.derived_with_basis().0
    }

    /// Cover of the derived datum whose `π_1` is the prime-to-`p` part of `π_1(self)`.
    pub fn etale_pi1_cover(&self, p: u64) -> Self {
        let der = if self.is_semisimple() {
            self.clone()
        } else {
            self.derived()
        };
        let r = der.semisimple_rank();
        if r == 0 {
            return der;
        }
        let a = der.simple_coroots.clone();
        let snf = a.smith();
        let vinv = snf
            .right
            .inverse_unimodular()
            .expect("Smith transforms are unimodular");
        let mut lrows = Vec::with_capacity(r);
        for i in 0..r {
            let d = snf.diagonal[i];
            let mut pp = 1;
            let mut rest = d;
            while rest % p as i64 == 0 {
                rest /= p as i64;
                pp *= p as i64;
            }
            lrows.push(vinv.row(i).iter().map(|x| x * pp).collect::<Vec<i64>>());
        }
        let l = IntMatrix::from_rows_with_cols(&lrows, r);
        let coroots: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                coordinates_in(&l, a.row(i)).expect("coroot lattice lies in the cover lattice")
            })
            .collect();
        let roots: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|k| dot(der.simple_roots.row(i), l.row(k)))
                    .collect()
            })
            .collect();
        let label = format!("{}~{p}", self.label);
        Self::new(
            label,
            r,
            IntMatrix::from_rows_with_cols(&roots, r),
            IntMatrix::from_rows_with_cols(&coroots, r),
        )
        .expect("cover datum is valid")
    }

    /// Adjoint datum with the same root system (cocharacters = coweight lattice).
    pub fn adjoint(&self) -> Self {
        Self::from_coweight_lattice(
            &format!("{}_ad", self.label),
            &self.cartan,
            &IntMatrix::identity(self.semisimple_rank()),
        )
        .expect("adjoint datum is valid")
    }

    /// A lattice isomorphism onto `other` carrying simple roots to simple roots and
    /// simple coroots to simple coroots: `(π, g)` with `g α_i = α'_{π(i)}` on column vectors.
    ///
    /// Complete for semisimple data; for data with a central torus only the case where the
    /// simple-root matrices agree after permutation is detected.
    pub fn isomorphism_witness(&self, other: &Self) -> Option<(Vec<usize>, IntMatrix)> {
        if self.rank_x != other.rank_x || self.semisimple_rank() != other.semisimple_rank() {
            return None;
        }
        let r = self.semisimple_rank();
        let mut found = None;
        let mut perm = Vec::with_capacity(r);
        let mut used = vec![false; r];
        self.search_permutations(other, &mut perm, &mut used, &mut |perm| {
            if let Some(g) = self.lattice_map(other, perm) {
                found = Some((perm.to_vec(), g));
                true
            } else {
                false
            }
        });
        found
    }

    fn search_permutations(
        &self,
        other: &Self,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let r = self.semisimple_rank();
        let i = perm.len();
        if i == r {
            return visit(perm);
        }
        for j in 0..r {
            if used[j] || self.cartan[(i, i)] != other.cartan[(j, j)] {
                continue;
            }
            if (0..i).any(|k| {
                self.cartan[(i, k)] != other.cartan[(j, perm[k])]
                    || self.cartan[(k, i)] != other.cartan[(perm[k], j)]
            }) {
                continue;
            }
            used[j] = true;
            perm.push(j);
            if self.search_permutations(other, perm, used, visit) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
        false
    }

    fn lattice_map(&self, other: &Self, perm: &[usize]) -> Option<IntMatrix> {
        let r = self.semisimple_rank();
        let n = self.rank_x;
        let g = if r == n {
            // g R = R' where R has the simple roots as columns
            let rm = self.simple_roots.transpose();
            let target: Vec<Vec<i64>> = perm
                .iter()
                .map(|&j| other.simple_roots.row(j).to_vec())
                .collect();
            let rp = IntMatrix::from_rows_with_cols(&target, n).transpose();
            let det = rm.det();
            let adj = adjugate(&rm);
            let num = rp.mul(&adj);
            let mut g = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    if num[(i, j)] % det != 0 {
                        return None;
                    }
                    g[(i, j)] = num[(i, j)] / det;
                }
            }
            g
        } else {
            let same = (0..r).all(|i| {
                self.simple_roots.row(i) == other.simple_roots.row(perm[i])
                    && self.simple_coroots.row(i) == other.simple_coroots.row(perm[i])
            });
            if !same {
                return None;
            }
            IntMatrix::identity(n)
        };
        if g.det().abs() != 1 {
            return None;
        }
        // coroots: g^{-T} α_i∨ = α'∨_{π(i)}, i.e. g^T α'∨_{π(i)} = α_i∨
        let gt = g.transpose();
        for (i, &j) in perm.iter().enumerate() {
            if gt.mul_vec(other.simple_coroots.row(j)) != self.simple_coroots.row(i) {
                return None;
            }
            if g.mul_vec(self.simple_roots.row(i)) != other.simple_roots.row(j) {
                return None;
            }
        }
        Some(g)
    }
}

fn lin_comb(coeffs: &[i64], basis: &IntMatrix, n: usize) -> Vec<i64> {
    let mut out = vec![0; n];
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            for (o, &b) in out.iter_mut().zip(basis.row(i)) {
                *o += c * b;
            }
        }
    }
    out
}

fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.nrows();
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj[(0, 0)] = 1;
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<Vec<i64>> = (0..n)
                .filter(|&a| a != j)
                .map(|a| (0..n).filter(|&b| b != i).map(|b| m[(a, b)]).collect())
                .collect();
            let minor = IntMatrix::from_rows(&rows).det();
            adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

/// `⟨χ, λ⟩` between coordinate vectors.
pub fn pair(chi: &[i64], lambda: &[i64]) -> i64 {
    dot(chi, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: char, r: usize) -> BasedRootDatum {
        BasedRootDatum::build_simple(s, r, Isogeny::SimplyConnected).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, r, n) in [
            ('A', 1, 2),
            ('A', 3, 12),
            ('B', 2, 8),
            ('C', 3, 18),
            ('D', 4, 24),
            ('G', 2, 12),
            ('F', 4, 48),
            ('E', 6, 72),
        ] {
            assert_eq!(sc(s, r).num_roots(), n, "{s}{r}");
        }
    }

    #[test]
    fn canonical_order_and_coroots() {
        let g2 = sc('G', 2);
        let heights: Vec<i64> = g2.roots()[..6].iter().map(Root::height).collect();
        assert_eq!(heights, vec![1, 1, 2, 3, 4, 5]);
        for k in 0..g2.num_roots() {
            assert_eq!(g2.pairing(k, k), 2);
            assert_eq!(g2.negative(g2.negative(k)), k);
        }
        // G2 highest root 3α1 + 2α2 is long; its coroot is α1∨ + 2α2∨
        let top = &g2.roots()[5];
        assert_eq!(top.coeffs, vec![3, 2]);
        assert_eq!(top.coroot_coeffs, vec![1, 2]);
    }

    #[test]
    fn pi1_of_isogenies() {
        assert!(sc('A', 3).pi1_derived().is_empty());
        let pgl4 = BasedRootDatum::build_simple('A', 3, Isogeny::Adjoint).unwrap();
        assert_eq!(pgl4.pi1_derived(), vec![4]);
        let so5 = BasedRootDatum::build_simple('B', 2, Isogeny::Adjoint).unwrap();
        assert_eq!(so5.pi1_derived(), vec![2]);
        assert!(BasedRootDatum::gl(3).pi1_derived().is_empty());
    }

    #[test]
    fn explicit_lattice_bounds() {
        // SL4/μ2: X_* spanned by the coroot lattice and 2ϖ∨_1
        let c = DynkinType::new('A', 3).unwrap().cartan_matrix();
        let mut rows = c.transpose().to_rows();
        rows.push(vec![2, 0, 0]);
        let b = crate::intmat::hermite_rows(&IntMatrix::from_rows(&rows));
        let d = BasedRootDatum::build_simple('A', 3, Isogeny::Explicit(b)).unwrap();
        assert_eq!(d.pi1_derived(), vec![2]);
        let bad = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        assert!(matches!(
            BasedRootDatum::build_simple('A', 3, Isogeny::Explicit(bad)),
            Err(Error::LatticeOutOfRange(_))
        ));
    }

    #[test]
    fn covers() {
        let pgl12 = BasedRootDatum::build_simple('A', 11, Isogeny::Adjoint).unwrap();
        let cover = pgl12.etale_pi1_cover(2);
        assert_eq!(cover.pi1_derived(), vec![3]);
        assert_eq!(cover.etale_pi1_cover(2).pi1_derived(), vec![3]);
        let gl2 = BasedRootDatum::gl(2);
        assert!(gl2.etale_pi1_cover(5).pi1_derived().is_empty());
        assert_eq!(gl2.derived().rank_x(), 1);
    }

    #[test]
    fn isomorphisms() {
        let a = sc('C', 2).dual();
        let b = BasedRootDatum::build_simple('B', 2, Isogeny::Adjoint).unwrap();
        assert!(a.isomorphism_witness(&b).is_some());
        assert!(sc('B', 2).isomorphism_witness(&b).is_none());
    }
}

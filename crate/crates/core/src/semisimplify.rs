//! Matrix representations of finitely generated groups over `F_q`: submodule search by
//! exhaustive spinning, composition flags, semisimplification and comparison through
//! characteristic polynomials of words.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{echelon_rows, Elem, FieldDescriptor, FiniteField, FqMatrix};

/// Cap on `q^d` for the exhaustive searches.
pub const SEARCH_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrixRep {
    field: FiniteField,
    dim: usize,
    generators: Vec<FqMatrix>,
    /// Two generators satisfying `g₀ g₁ g₀⁻¹ = g₁^q` for this `q`.
    tame_q: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub field: FieldDescriptor,
    pub generators: Vec<FqMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tame_q: Option<u64>,
}

impl FqMatrixRep {
    pub fn new(field: FiniteField, generators: Vec<FqMatrix>) -> Result<Self> {
        let dim = generators.first().map_or(0, FqMatrix::nrows);
        for g in &generators {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.nrows().max(g.ncols()),
                });
            }
            if g.to_rows().iter().flatten().any(|&x| x >= field.size()) {
                return Err(Error::Invalid("matrix entry outside the field".into()));
            }
            if g.det(&field) == 0 {
                return Err(Error::Singular);
            }
        }
        Ok(FqMatrixRep {
            field,
            dim,
            generators,
            tame_q: None,
        })
    }

    /// Tags the representation as a representation of the tame quotient and checks the relation.
    pub fn tame(field: FiniteField, sigma: FqMatrix, tau: FqMatrix, q: u64) -> Result<Self> {
        let mut rep = Self::new(field, vec![sigma, tau])?;
        let f = &rep.field;
        let (s, t) = (&rep.generators[0], &rep.generators[1]);
        let lhs = s.mul(t, f).mul(&s.inverse(f).expect("invertible"), f);
        let rhs = t.pow(q, f);
        for i in 0..rep.dim {
            for j in 0..rep.dim {
                if lhs[(i, j)] != rhs[(i, j)] {
                    return Err(Error::TameRelation { row: i, col: j });
                }
            }
        }
        rep.tame_q = Some(q);
        Ok(rep)
    }

    pub fn from_json(j: &RepJson) -> Result<Self> {
        let field = FiniteField::from_descriptor(&j.field)?;
        match j.tame_q {
            Some(q) if j.generators.len() == 2 => {
                Self::tame(field, j.generators[0].clone(), j.generators[1].clone(), q)
            }
            Some(_) => Err(Error::Invalid(
                "a tame representation has exactly two generators".into(),
            )),
            None => Self::new(field, j.generators.clone()),
        }
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            field: self.field.descriptor(),
            generators: self.generators.clone(),
            tame_q: self.tame_q,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[FqMatrix] {
        &self.generators
    }

    pub fn tame_q(&self) -> Option<u64> {
        self.tame_q
    }

    /// `x ↦ P⁻¹ g P` on every generator (the representation in the basis given by the columns of `P`).
    pub fn change_basis(&self, p: &FqMatrix) -> Result<Self> {
        let f = &self.field;
        let pi = p.inverse(f).ok_or(Error::Singular)?;
        let generators = self
            .generators
            .iter()
            .map(|g| pi.mul(g, f).mul(p, f))
            .collect();
        Ok(FqMatrixRep {
            field: f.clone(),
            dim: self.dim,
            generators,
            tame_q: self.tame_q,
        })
    }

    fn search_size(&self) -> Result<()> {
        let size = (self.field.size() as u128)
            .checked_pow(self.dim as u32)
            .unwrap_or(u128::MAX);
        if size > SEARCH_CAP {
            return Err(Error::SizeCap {
                size,
                cap: SEARCH_CAP,
            });
        }
        Ok(())
    }
}

/// Echelon basis of the smallest invariant subspace containing `v`.
pub fn spin(rep: &FqMatrixRep, v: &[Elem]) -> Result<FqMatrix> {
    if v.len() != rep.dim {
        return Err(Error::DimensionMismatch {
            expected: rep.dim,
            got: v.len(),
        });
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    let f = &rep.field;
    let mut vectors = vec![v.to_vec()];
    let mut basis = echelon_rows(&FqMatrix::from_rows(&vectors), f);
    let mut i = 0;
    while i < vectors.len() {
        for g in &rep.generators {
            let w = g.mul_vec(&vectors[i], f);
            if !basis.row_space_contains(&w, f) {
                vectors.push(w);
                basis = echelon_rows(&FqMatrix::from_rows(&vectors), f);
            }
        }
        i += 1;
    }
    Ok(basis)
}

/// Representatives of the points of `P^{d-1}(F_q)`: first nonzero coordinate is 1.
fn projective_points(f: &FiniteField, d: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let q = f.size() as u64;
    (0..d).flat_map(move |lead| {
        let tail = d - lead - 1;
        (0..q.pow(tail as u32)).map(move |mut code| {
            let mut v = vec![0; d];
            v[lead] = 1;
            for x in v.iter_mut().skip(lead + 1) {
                *x = (code % q) as Elem;
                code /= q;
            }
            v
        })
    })
}

/// A nonzero submodule of minimal dimension, found by spinning every line.
pub fn minimal_submodule(rep: &FqMatrixRep) -> Result<FqMatrix> {
    rep.search_size()?;
    let mut best: Option<FqMatrix> = None;
    for v in projective_points(&rep.field, rep.dim) {
        let w = spin(rep, &v)?;
        if best.as_ref().is_none_or(|b| w.nrows() < b.nrows()) {
            let done = w.nrows() == 1;
            best = Some(w);
            if done {
                break;
            }
        }
    }
    best.ok_or(Error::ZeroVector)
}

/// Completes the rows of an echelon basis to a basis of `F_q^d` with standard vectors; returns
/// the basis as matrix columns.
fn adapted_basis(sub: &FqMatrix, d: usize, f: &FiniteField) -> FqMatrix {
    let (_, pivots) = sub.rref(f);
    let mut cols: Vec<Vec<Elem>> = sub.to_rows();
    for i in 0..d {
        if !pivots.contains(&i) {
            let mut e = vec![0; d];
            e[i] = 1;
            cols.push(e);
        }
    }
    FqMatrix::from_rows(&cols).transpose()
}

/// `0 ⊂ V₁ ⊂ … ⊂ V_k = V`: `V_i` is spanned by the first `dims[i]` columns of `basis`, and
/// in that basis every generator is block upper triangular with irreducible diagonal blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionFlag {
    pub basis: FqMatrix,
    pub dims: Vec<usize>,
}

impl CompositionFlag {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// The subspace `V_i` as echelon rows.
    pub fn subspace(&self, i: usize, f: &FiniteField) -> FqMatrix {
        let cols: Vec<usize> = (0..self.dims[i]).collect();
        let rows: Vec<usize> = (0..self.basis.nrows()).collect();
        echelon_rows(&self.basis.submatrix(&rows, &cols).transpose(), f)
    }

    /// Sizes of the graded pieces.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        self.dims
            .iter()
            .map(|&d| {
                let s = d - prev;
                prev = d;
                s
            })
            .collect()
    }
}

pub fn composition_flag(rep: &FqMatrixRep) -> Result<CompositionFlag> {
    rep.search_size()?;
    let f = &rep.field;
    let d = rep.dim;
    let mut basis = FqMatrix::identity(d);
    let mut dims = Vec::new();
    let mut offset = 0;
    while offset < d {
        let current = rep.change_basis(&basis)?;
        let idx: Vec<usize> = (offset..d).collect();
        let quotient = FqMatrixRep {
            field: f.clone(),
            dim: d - offset,
            generators: current
                .generators
                .iter()
                .map(|g| g.submatrix(&idx, &idx))
                .collect(),
            tame_q: None,
        };
        let sub = minimal_submodule(&quotient)?;
        let local = adapted_basis(&sub, d - offset, f);
        let mut step = FqMatrix::identity(d);
        for i in 0..d - offset {
            for j in 0..d - offset {
                step[(offset + i, offset + j)] = local[(i, j)];
            }
        }
        basis = basis.mul(&step, f);
        offset += sub.nrows();
        dims.push(offset);
    }
    Ok(CompositionFlag { basis, dims })
}

/// Associated graded of the composition flag, block diagonal in the flag-adapted basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semisimplification {
    pub rep: FqMatrixRep,
    pub flag: CompositionFlag,
    /// Generators of each graded piece.
    pub blocks: Vec<FqMatrixRep>,
}

pub fn semisimplify(rep: &FqMatrixRep) -> Result<Semisimplification> {
    let flag = composition_flag(rep)?;
    let f = &rep.field;
    let adapted = rep.change_basis(&flag.basis)?;
    let d = rep.dim;
    let mut generators = vec![FqMatrix::zeros(d, d); rep.generators.len()];
    let mut blocks = Vec::new();
    let mut start = 0;
    for &end in &flag.dims {
        let idx: Vec<usize> = (start..end).collect();
        let block_gens: Vec<FqMatrix> = adapted
            .generators
            .iter()
            .map(|g| g.submatrix(&idx, &idx))
            .collect();
        for (out, g) in generators.iter_mut().zip(&block_gens) {
            for (i, &a) in idx.iter().enumerate() {
                for (j, &b) in idx.iter().enumerate() {
                    out[(a, b)] = g[(i, j)];
                }
            }
        }
        blocks.push(FqMatrixRep {
            field: f.clone(),
            dim: end - start,
            generators: block_gens,
            tame_q: None,
        });
        start = end;
    }
    let ss = FqMatrixRep {
        field: f.clone(),
        dim: d,
        generators,
        tame_q: rep.tame_q,
    };
    Ok(Semisimplification {
        rep: ss,
        flag,
        blocks,
    })
}

/// Letter `k > 0` is generator `k - 1`; `-k` is its inverse.
pub fn word_matrix(rep: &FqMatrixRep, word: &[i64]) -> Result<FqMatrix> {
    let f = &rep.field;
    let mut out = FqMatrix::identity(rep.dim);
    for &letter in word {
        let k = letter.unsigned_abs() as usize;
        if k == 0 || k > rep.generators.len() {
            return Err(Error::Invalid(format!(
                "letter {letter} is not a generator"
            )));
        }
        let g = &rep.generators[k - 1];
        let m = if letter > 0 {
            g.clone()
        } else {
            g.inverse(f).ok_or(Error::Singular)?
        };
        out = out.mul(&m, f);
    }
    Ok(out)
}

/// Characteristic polynomial of the word, coefficients from the constant term up.
pub fn char_poly_word(rep: &FqMatrixRep, word: &[i64]) -> Result<Vec<Elem>> {
    Ok(word_matrix(rep, word)?.charpoly(&rep.field))
}

/// Reduced words over the generators and their inverses, by length then lexicographically.
pub fn reduced_words(generators: usize, maxlen: usize) -> Vec<Vec<i64>> {
    let letters: Vec<i64> = (1..=generators as i64).flat_map(|k| [k, -k]).collect();
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() != Some(&-l) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BrauerNesbitt {
    /// No word of length at most this bound distinguishes the two; not a proof beyond it.
    ConsistentUpTo(usize),
    DistinguishedBy(Vec<i64>),
}

impl BrauerNesbitt {
    pub fn is_consistent(&self) -> bool {
        matches!(self, BrauerNesbitt::ConsistentUpTo(_))
    }
}

pub fn brauer_nesbitt_equal(
    a: &FqMatrixRep,
    b: &FqMatrixRep,
    maxlen: usize,
) -> Result<BrauerNesbitt> {
    if a.field != b.field || a.dim != b.dim || a.generators.len() != b.generators.len() {
        return Err(Error::Invalid(
            "representations differ in field, dimension or generator count".into(),
        ));
    }
    let f = &a.field;
    let inverses = |r: &FqMatrixRep| -> Result<Vec<FqMatrix>> {
        r.generators
            .iter()
            .map(|g| g.inverse(f).ok_or(Error::Singular))
            .collect()
    };
    let (ia, ib) = (inverses(a)?, inverses(b)?);
    let letter = |r: &FqMatrixRep, inv: &[FqMatrix], l: i64| -> FqMatrix {
        let k = l.unsigned_abs() as usize - 1;
        if l > 0 {
            r.generators[k].clone()
        } else {
            inv[k].clone()
        }
    };
    // breadth-first over reduced words, carrying the partial products
    let mut layer = vec![(
        Vec::<i64>::new(),
        FqMatrix::identity(a.dim),
        FqMatrix::identity(b.dim),
    )];
    let letters: Vec<i64> = (1..=a.generators.len() as i64)
        .flat_map(|k| [k, -k])
        .collect();
    for len in 0..=maxlen {
        for (w, ma, mb) in &layer {
            if ma.charpoly(f) != mb.charpoly(f) {
                return Ok(BrauerNesbitt::DistinguishedBy(w.clone()));
            }
        }
        if len == maxlen {
            break;
        }
        let mut next = Vec::new();
        for (w, ma, mb) in &layer {
            for &l in &letters {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push((
                    v,
                    ma.mul(&letter(a, &ia, l), f),
                    mb.mul(&letter(b, &ib, l), f),
                ));
            }
        }
        layer = next;
    }
    Ok(BrauerNesbitt::ConsistentUpTo(maxlen))
}

/// Basis of `{X : X g_a = g_b X for every generator}` (`X` is `dim b × dim a`).
pub fn hom_space(a: &FqMatrixRep, b: &FqMatrixRep) -> Result<Vec<FqMatrix>> {
    if a.field != b.field || a.generators.len() != b.generators.len() {
        return Err(Error::Invalid(
            "representations differ in field or generator count".into(),
        ));
    }
    let f = &a.field;
    let (m, n) = (b.dim, a.dim);
    let unknowns = m * n;
    let mut rows = Vec::new();
    for (ga, gb) in a.generators.iter().zip(&b.generators) {
        for i in 0..m {
            for j in 0..n {
                // (X ga)_ij - (gb X)_ij
                let mut row = vec![0; unknowns];
                for k in 0..n {
                    row[i * n + k] = f.add(row[i * n + k], ga[(k, j)]);
                }
                for k in 0..m {
                    row[k * n + j] = f.sub(row[k * n + j], gb[(i, k)]);
                }
                rows.push(row);
            }
        }
    }
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let system = if rows.is_empty() {
        FqMatrix::zeros(1, unknowns)
    } else {
        FqMatrix::from_rows(&rows)
    };
    let null = system.nullspace(f);
    Ok((0..null.nrows())
        .map(|r| {
            let v = null.row(r);
            let rows: Vec<Vec<Elem>> = (0..m).map(|i| v[i * n..(i + 1) * n].to_vec()).collect();
            FqMatrix::from_rows_with_cols(&rows, n)
        })
        .collect())
}

/// An invertible `X` with `X g_a X⁻¹ = g_b`, searched over all of `Hom(a, b)`.
pub fn module_isomorphism(a: &FqMatrixRep, b: &FqMatrixRep) -> Result<Option<FqMatrix>> {
    if a.dim != b.dim {
        return Ok(None);
    }
    let f = &a.field;
    let basis = hom_space(a, b)?;
    let q = f.size() as u128;
    let size = q.checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if size > SEARCH_CAP {
        return Err(Error::SizeCap {
            size,
            cap: SEARCH_CAP,
        });
    }
    for code in 1..size {
        let mut c = code;
        let mut x = FqMatrix::zeros(b.dim, a.dim);
        for m in &basis {
            let coef = (c % q) as Elem;
            c /= q;
            if coef != 0 {
                x = x.add(&m.scale(coef, f), f);
            }
        }
        if x.det(f) != 0 {
            return Ok(Some(x));
        }
    }
    Ok(if a.dim == 0 {
        Some(FqMatrix::zeros(0, 0))
    } else {
        None
    })
}

/// Whether the representation is isomorphic to its semisimplification.
pub fn is_semisimple(rep: &FqMatrixRep) -> Result<bool> {
    let ss = semisimplify(rep)?;
    Ok(module_isomorphism(rep, &ss.rep)?.is_some())
}

/// Irreducibility as a `GL_d`-module. For images inside a smaller group `G ⊂ GL_d` this does not
/// decide `G`-irreducibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// `F_q`-dimension of the endomorphism algebra; for an irreducible module it is the degree
    /// of the field extension it realises.
    pub commutant_dim: usize,
    pub absolutely_irreducible: bool,
}

pub fn is_absolutely_irreducible(rep: &FqMatrixRep) -> Result<Irreducibility> {
    let irreducible = rep.dim > 0 && minimal_submodule(rep)?.nrows() == rep.dim;
    let commutant_dim = hom_space(rep, rep)?.len();
    Ok(Irreducibility {
        irreducible,
        commutant_dim,
        absolutely_irreducible: irreducible && commutant_dim == 1,
    })
}

fn random_invertible<R: Rng>(f: &FiniteField, d: usize, rng: &mut R) -> FqMatrix {
    loop {
        let rows: Vec<Vec<Elem>> = (0..d)
            .map(|_| (0..d).map(|_| rng.gen_range(0..f.size())).collect())
            .collect();
        let m = FqMatrix::from_rows_with_cols(&rows, d);
        if m.det(f) != 0 {
            return m;
        }
    }
}

/// Random block upper triangular generators with the given diagonal block sizes, conjugated by
/// a random invertible matrix when `conjugate` is set.
pub fn random_block_triangular<R: Rng>(
    f: &FiniteField,
    blocks: &[usize],
    generators: usize,
    conjugate: bool,
    rng: &mut R,
) -> FqMatrixRep {
    let d: usize = blocks.iter().sum();
    let mut starts = Vec::new();
    let mut acc = 0;
    for &b in blocks {
        starts.push(acc);
        acc += b;
    }
    let block_of = |i: usize| starts.iter().rposition(|&s| s <= i).unwrap();
    let gens: Vec<FqMatrix> = (0..generators)
        .map(|_| {
            let mut g = FqMatrix::zeros(d, d);
            for (k, &b) in blocks.iter().enumerate() {
                let diag = random_invertible(f, b, rng);
                for i in 0..b {
                    for j in 0..b {
                        g[(starts[k] + i, starts[k] + j)] = diag[(i, j)];
                    }
                }
            }
            for i in 0..d {
                for j in 0..d {
                    if block_of(j) > block_of(i) {
                        g[(i, j)] = rng.gen_range(0..f.size());
                    }
                }
            }
            g
        })
        .collect();
    let rep = FqMatrixRep::new(f.clone(), gens).expect("invertible blocks");
    if conjugate {
        rep.change_basis(&random_invertible(f, d, rng))
            .expect("invertible")
    } else {
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, k: u32) -> FiniteField {
        FiniteField::new(p, k).unwrap()
    }

    #[test]
    fn unipotent_spin_and_flag() {
        let f3 = f(3, 1);
        let u = FqMatrixRep::new(
            f3.clone(),
            vec![FqMatrix::from_rows(&[vec![1, 1], vec![0, 1]])],
        )
        .unwrap();
        assert_eq!(spin(&u, &[1, 0]).unwrap().nrows(), 1);
        assert_eq!(spin(&u, &[0, 1]).unwrap().nrows(), 2);
        assert!(matches!(spin(&u, &[0, 0]), Err(Error::ZeroVector)));
        let flag = composition_flag(&u).unwrap();
        assert_eq!(flag.dims, vec![1, 2]);
        assert_eq!(flag.subspace(0, &f3).to_rows(), vec![vec![1, 0]]);
        let ss = semisimplify(&u).unwrap();
        assert!(ss.rep.generators()[0].is_identity());
        assert!(!is_semisimple(&u).unwrap());
    }

    #[test]
    fn char_polys() {
        let f2 = f(2, 1);
        let r = FqMatrixRep::new(
            f2.clone(),
            vec![FqMatrix::from_rows(&[vec![0, 1], vec![1, 1]])],
        )
        .unwrap();
        assert_eq!(char_poly_word(&r, &[1]).unwrap(), vec![1, 1, 1]);
        assert_eq!(char_poly_word(&r, &[]).unwrap(), vec![1, 0, 1]);
        let irr = is_absolutely_irreducible(&r).unwrap();
        assert!(irr.irreducible);
        assert_eq!(irr.commutant_dim, 2);
        assert!(!irr.absolutely_irreducible);
    }

    #[test]
    fn distinguishing_word() {
        let f5 = f(5, 1);
        let triv = FqMatrixRep::new(f5.clone(), vec![FqMatrix::identity(2)]).unwrap();
        let chi = FqMatrixRep::new(f5.clone(), vec![FqMatrix::diagonal(&[1, 2])]).unwrap();
        assert_eq!(
            brauer_nesbitt_equal(&triv, &chi, 3).unwrap(),
            BrauerNesbitt::DistinguishedBy(vec![1])
        );
    }

    #[test]
    fn reduced_word_counts() {
        // 1 + 4 + 4·3 words of length at most 2 over two generators
        assert_eq!(reduced_words(2, 2).len(), 17);
    }

    #[test]
    fn s3_standard_rep() {
        let f5 = f(5, 1);
        // permutation action on the sum-zero plane, basis e1 - e2, e2 - e3
        let transposition = FqMatrix::from_rows(&[vec![4, 1], vec![0, 1]]);
        let cycle = FqMatrix::from_rows(&[vec![0, 4], vec![1, 4]]);
        let r = FqMatrixRep::new(f5, vec![transposition, cycle]).unwrap();
        assert!(
            is_absolutely_irreducible(&r)
                .unwrap()
                .absolutely_irreducible
        );
    }
}

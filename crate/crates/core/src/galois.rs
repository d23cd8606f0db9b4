//! Local fields described by numerical invariants, representations of the tame quotient
//! `⟨σ, τ | σ τ σ⁻¹ = τ^q⟩`, and the cohomological dimension formulas built from fixed spaces.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chevalley::{invariant_dim, ChevalleyAlgebra};
use crate::error::{Error, Result};
use crate::field::{is_prime, Elem, FieldDescriptor, FiniteField, FqMatrix};
use crate::levi::LeviDescriptor;
use crate::root_datum::{BasedRootDatum, GenReductiveDatum, Isogeny};

/// Smallest primitive root modulo a prime.
pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let f = FiniteField::prime(p).expect("prime");
    f.generator()
}

/// A finite extension `F/Q_p` through the invariants the formulas consume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LocalFieldJson", into = "LocalFieldJson")]
pub struct LocalFieldDesc {
    pub p: u32,
    pub f: u32,
    pub e: u32,
    /// `μ_{p^∞}(F) = μ_{p^m}`.
    pub m: u32,
    /// Mod-`p` cyclotomic character on the Frobenius lift and on the tame generator.
    pub c_sigma: u32,
    pub c_tau: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct LocalFieldJson {
    p: u32,
    #[serde(default = "one")]
    f: u32,
    #[serde(default = "one")]
    e: u32,
    #[serde(default)]
    m: Option<u32>,
    #[serde(default)]
    c_sigma: Option<u32>,
    #[serde(default)]
    c_tau: Option<u32>,
}

fn one() -> u32 {
    1
}

impl TryFrom<LocalFieldJson> for LocalFieldDesc {
    type Error = Error;
    fn try_from(j: LocalFieldJson) -> Result<Self> {
        LocalFieldDesc::with_options(j.p, j.f, j.e, j.m, j.c_sigma, j.c_tau)
    }
}

impl From<LocalFieldDesc> for LocalFieldJson {
    fn from(d: LocalFieldDesc) -> Self {
        LocalFieldJson {
            p: d.p,
            f: d.f,
            e: d.e,
            m: Some(d.m),
            c_sigma: Some(d.c_sigma),
            c_tau: Some(d.c_tau),
        }
    }
}

impl LocalFieldDesc {
    /// Fully explicit descriptor; checks the consistency conditions.
    pub fn new(p: u32, f: u32, e: u32, m: u32, c_sigma: u32, c_tau: u32) -> Result<Self> {
        let bad = |s: &str| Err(Error::InvalidLocalField(s.to_string()));
        if !is_prime(p as u64) {
            return bad("residue characteristic must be prime");
        }
        if f == 0 || e == 0 {
            return bad("residue degree and ramification index must be positive");
        }
        if c_sigma == 0 || c_tau == 0 || c_sigma >= p || c_tau >= p {
            return bad("cyclotomic values must be units of F_p");
        }
        if p == 2 && m == 0 {
            return bad("every 2-adic field contains -1, so m >= 1");
        }
        if (m >= 1) != (c_sigma == 1 && c_tau == 1) {
            return bad("m >= 1 exactly when the mod-p cyclotomic character is trivial");
        }
        if m >= 1 {
            // [F(ζ_{p^m}) : Q_p] divides [F : Q_p], and e is divisible by φ(p^m)
            let phi = (p as u64 - 1) * (p as u64).pow(m - 1);
            if !(e as u64).is_multiple_of(phi) {
                return bad("ramification index is too small for the stated roots of unity");
            }
        }
        Ok(LocalFieldDesc {
            p,
            f,
            e,
            m,
            c_sigma,
            c_tau,
        })
    }

    /// Defaults: `χ̄(σ) = 1`, `χ̄(τ) = g^e` for the smallest primitive root `g`, and
    /// `m = 1` exactly when that makes the character trivial.
    pub fn with_options(
        p: u32,
        f: u32,
        e: u32,
        m: Option<u32>,
        c_sigma: Option<u32>,
        c_tau: Option<u32>,
    ) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidLocalField(
                "residue characteristic must be prime".into(),
            ));
        }
        let c_sigma = c_sigma.unwrap_or(1);
        let c_tau = c_tau.unwrap_or_else(|| {
            let g = primitive_root(p) as u64;
            let mut acc = 1u64;
            for _ in 0..e % (p - 1).max(1) {
                acc = acc * g % p as u64;
            }
            acc as u32
        });
        let m = m.unwrap_or(u32::from(c_sigma == 1 && c_tau == 1));
        Self::new(p, f, e, m, c_sigma, c_tau)
    }

    pub fn qp(p: u32) -> Result<Self> {
        Self::with_options(p, 1, 1, None, None, None)
    }

    pub fn unramified(p: u32, f: u32) -> Result<Self> {
        Self::with_options(p, f, 1, None, None, None)
    }

    /// `Q_p(ζ_{p^k})`.
    pub fn cyclotomic(p: u32, k: u32) -> Result<Self> {
        let e = (p - 1) * p.pow(k - 1);
        Self::new(p, 1, e, k, 1, 1)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }

    /// `[F : Q_p]`.
    pub fn degree(&self) -> u32 {
        self.e * self.f
    }

    pub fn has_zeta_p(&self) -> bool {
        self.m >= 1
    }
}

/// A representation of the tame quotient over a finite field of characteristic `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameRep {
    pub field: FiniteField,
    pub sigma: FqMatrix,
    pub tau: FqMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TameRepJson {
    pub field: FieldDescriptor,
    pub sigma: FqMatrix,
    pub tau: FqMatrix,
}

impl TameRep {
    pub fn new(field: FiniteField, sigma: FqMatrix, tau: FqMatrix) -> Result<Self> {
        let d = sigma.nrows();
        for m in [&sigma, &tau] {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: m.ncols().max(m.nrows()),
                });
            }
            if m.to_rows().iter().flatten().any(|&x| x >= field.size()) {
                return Err(Error::Invalid("matrix entry outside the field".into()));
            }
        }
        Ok(TameRep { field, sigma, tau })
    }

    pub fn trivial(field: &FiniteField, dim: usize) -> Self {
        TameRep {
            field: field.clone(),
            sigma: FqMatrix::identity(dim),
            tau: FqMatrix::identity(dim),
        }
    }

    /// One-dimensional representation with the given values.
    pub fn character(field: &FiniteField, sigma: Elem, tau: Elem) -> Self {
        TameRep {
            field: field.clone(),
            sigma: FqMatrix::diagonal(&[sigma]),
            tau: FqMatrix::diagonal(&[tau]),
        }
    }

    pub fn from_json(j: &TameRepJson) -> Result<Self> {
        Self::new(
            FiniteField::from_descriptor(&j.field)?,
            j.sigma.clone(),
            j.tau.clone(),
        )
    }

    pub fn to_json(&self) -> TameRepJson {
        TameRepJson {
            field: self.field.descriptor(),
            sigma: self.sigma.clone(),
            tau: self.tau.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.sigma.nrows()
    }

    pub fn direct_sum(&self, other: &TameRep) -> TameRep {
        let block = |a: &FqMatrix, b: &FqMatrix| {
            let (n, m) = (a.nrows(), b.nrows());
            let mut out = FqMatrix::zeros(n + m, n + m);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] = a[(i, j)];
                }
            }
            for i in 0..m {
                for j in 0..m {
                    out[(n + i, n + j)] = b[(i, j)];
                }
            }
            out
        };
        TameRep {
            field: self.field.clone(),
            sigma: block(&self.sigma, &other.sigma),
            tau: block(&self.tau, &other.tau),
        }
    }

    /// Conjugate `g ρ g⁻¹`.
    pub fn conjugate(&self, g: &FqMatrix) -> Result<TameRep> {
        let f = &self.field;
        let gi = g.inverse(f).ok_or(Error::Singular)?;
        Ok(TameRep {
            field: f.clone(),
            sigma: g.mul(&self.sigma, f).mul(&gi, f),
            tau: g.mul(&self.tau, f).mul(&gi, f),
        })
    }
}

/// Checks invertibility, the characteristic and the tame relation.
pub fn validate_tame_rep(lf: &LocalFieldDesc, rho: &TameRep) -> Result<()> {
    let f = &rho.field;
    if f.characteristic() != lf.p {
        return Err(Error::InvalidField(format!(
            "coefficient field has characteristic {}, local field has residue characteristic {}",
            f.characteristic(),
            lf.p
        )));
    }
    let si = rho.sigma.inverse(f).ok_or(Error::Singular)?;
    if rho.tau.inverse(f).is_none() {
        return Err(Error::Singular);
    }
    let lhs = rho.sigma.mul(&rho.tau, f).mul(&si, f);
    let rhs = rho.tau.pow(lf.q(), f);
    for i in 0..rho.dim() {
        for j in 0..rho.dim() {
            if lhs[(i, j)] != rhs[(i, j)] {
                return Err(Error::TameRelation { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// `V(1)`: twist by the mod-`p` cyclotomic character.
pub fn twist(lf: &LocalFieldDesc, rho: &TameRep) -> TameRep {
    let f = &rho.field;
    TameRep {
        field: f.clone(),
        sigma: rho.sigma.scale(f.from_int(lf.c_sigma as i64), f),
        tau: rho.tau.scale(f.from_int(lf.c_tau as i64), f),
    }
}

/// Contragredient `V*`.
pub fn dual(rho: &TameRep) -> Result<TameRep> {
    let f = &rho.field;
    Ok(TameRep {
        field: f.clone(),
        sigma: rho.sigma.inverse(f).ok_or(Error::Singular)?.transpose(),
        tau: rho.tau.inverse(f).ok_or(Error::Singular)?.transpose(),
    })
}

/// `V*(1)`.
pub fn dual_twist(lf: &LocalFieldDesc, rho: &TameRep) -> Result<TameRep> {
    Ok(twist(lf, &dual(rho)?))
}

pub fn h0(rho: &TameRep) -> usize {
    invariant_dim(
        &rho.field,
        rho.dim(),
        &[rho.sigma.clone(), rho.tau.clone()],
        false,
    )
    .expect("square matrices of matching size")
    .dim
}

/// `h²(V) = h⁰(V*(1))`.
pub fn h2_via_duality(lf: &LocalFieldDesc, rho: &TameRep) -> Result<usize> {
    validate_tame_rep(lf, rho)?;
    Ok(h0(&dual_twist(lf, rho)?))
}

/// `h¹ = h⁰ + h² + dim V · [F : Q_p]`.
pub fn h1_via_ep(lf: &LocalFieldDesc, rho: &TameRep) -> Result<usize> {
    let h2 = h2_via_duality(lf, rho)?;
    Ok(h0(rho) + h2 + rho.dim() * lf.degree() as usize)
}

/// `dim Z¹ = dim V · ([F : Q_p] + 1) + h²`.
pub fn z1_dim(lf: &LocalFieldDesc, rho: &TameRep) -> Result<usize> {
    let h2 = h2_via_duality(lf, rho)?;
    Ok(rho.dim() * (lf.degree() as usize + 1) + h2)
}

/// All cohomological numbers at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDims {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub z1: usize,
}

pub fn cohomology(lf: &LocalFieldDesc, rho: &TameRep) -> Result<CohomologyDims> {
    let h2 = h2_via_duality(lf, rho)?;
    let h0 = h0(rho);
    let d = rho.dim();
    let df = lf.degree() as usize;
    Ok(CohomologyDims {
        h0,
        h1: h0 + h2 + d * df,
        h2,
        z1: d * (df + 1) + h2,
    })
}

/// Generators and relations count of a framed deformation ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationNumbers {
    pub r: usize,
    pub s: usize,
    pub relative_dim: i64,
}

pub fn presentation_numbers(
    d: &GenReductiveDatum,
    lf: &LocalFieldDesc,
    ad: &TameRep,
) -> Result<PresentationNumbers> {
    if ad.dim() != d.dim_g() {
        return Err(Error::DimensionMismatch {
            expected: d.dim_g(),
            got: ad.dim(),
        });
    }
    let r = z1_dim(lf, ad)?;
    let s = h2_via_duality(lf, ad)?;
    Ok(PresentationNumbers {
        r,
        s,
        relative_dim: r as i64 - s as i64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativePresentation {
    pub r: usize,
    pub t: usize,
    pub relative_dim: i64,
}

/// Presentation relative to a quotient `G → H`, from the kernel of `ad G → ad H`.
pub fn relative_presentation(
    dg: &GenReductiveDatum,
    dh: &GenReductiveDatum,
    lf: &LocalFieldDesc,
    ad0: &TameRep,
) -> Result<RelativePresentation> {
    let expected = dg
        .dim_g()
        .checked_sub(dh.dim_g())
        .ok_or(Error::DimensionMismatch {
            expected: dg.dim_g(),
            got: dh.dim_g(),
        })?;
    if ad0.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: ad0.dim(),
        });
    }
    if expected == 0 {
        return Ok(RelativePresentation {
            r: 0,
            t: 0,
            relative_dim: 0,
        });
    }
    let r = z1_dim(lf, ad0)?;
    let t = h2_via_duality(lf, ad0)?;
    Ok(RelativePresentation {
        r,
        t,
        relative_dim: r as i64 - t as i64,
    })
}

/// `h⁰(W(1))`; the point is special at level `j` when this is at least `j + 1`.
pub fn special_level(lf: &LocalFieldDesc, w: &TameRep) -> Result<usize> {
    validate_tame_rep(lf, w)?;
    Ok(h0(&twist(lf, w)))
}

/// Maximum of `h⁰((Lie U)*(1))` over the supplied nilradical representations.
pub fn defect(lf: &LocalFieldDesc, levi: &LeviDescriptor, lie_u: &[TameRep]) -> Result<usize> {
    let mut delta = 0;
    for rep in lie_u {
        if rep.dim() != levi.dim_u {
            return Err(Error::DimensionMismatch {
                expected: levi.dim_u,
                got: rep.dim(),
            });
        }
        validate_tame_rep(lf, rep)?;
        delta = delta.max(h0(&dual_twist(lf, rep)?));
    }
    debug_assert!(2 * delta <= levi.dim_g - levi.dim_l);
    Ok(delta)
}

/// Dimension of the centre of the Levi: invariants of the stabiliser of `Φ_L` in `Δ` on
/// the characters orthogonal to the coroots of `Φ_L`.
pub fn levi_centre_dim(d: &GenReductiveDatum, levi: &LeviDescriptor) -> usize {
    let base = d.base();
    let n = base.rank_x();
    let mut rows: Vec<Vec<i64>> = levi
        .phi_l
        .iter()
        .map(|&k| base.root(k).cocharacter.clone())
        .collect();
    for g in d.group().elements() {
        let perm = d.root_permutation(g);
        let mut image: Vec<usize> = levi.phi_l.iter().map(|&k| perm[k]).collect();
        image.sort_unstable();
        let mut own = levi.phi_l.clone();
        own.sort_unstable();
        if image == own {
            let a = &d.action()[g];
            for i in 0..n {
                let mut row = a.row(i).to_vec();
                row[i] -= 1;
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return n;
    }
    n - crate::intmat::IntMatrix::from_rows_with_cols(&rows, n).rank()
}

/// `dim G - dim Z(L) + ½(dim G - dim L)[F:Q_p] + δ`.
pub fn fiber_dim_bound(
    d: &GenReductiveDatum,
    levi: &LeviDescriptor,
    lf: &LocalFieldDesc,
    delta: usize,
) -> usize {
    d.dim_g() - levi_centre_dim(d, levi)
        + (levi.dim_g - levi.dim_l) / 2 * lf.degree() as usize
        + delta
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `dim G (1 + [F:Q_p]) - dim Y ≥ [F:Q_p] dim L + dim Z(L)`.
pub fn bound_y_check(
    d: &GenReductiveDatum,
    levi: &LeviDescriptor,
    lf: &LocalFieldDesc,
    dim_y: usize,
) -> BoundCheck {
    let df = lf.degree() as i64;
    let lhs = d.dim_g() as i64 * (1 + df) - dim_y as i64;
    let rhs = df * levi.dim_l as i64 + levi_centre_dim(d, levi) as i64;
    BoundCheck {
        lhs,
        rhs,
        holds: lhs >= rhs,
    }
}

/// Conjugation action `X ↦ M X M⁻¹` on `d × d` matrices (basis `E_ij` in row-major order).
pub fn adjoint_matrix(m: &FqMatrix, f: &FiniteField) -> Result<FqMatrix> {
    let d = m.nrows();
    let mi = m.inverse(f).ok_or(Error::Singular)?;
    let mut out = FqMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            // M E_ij M⁻¹ has (a, b) entry M[a][i] · M⁻¹[j][b]
            for a in 0..d {
                for b in 0..d {
                    out[(a * d + b, i * d + j)] = f.mul(m[(a, i)], mi[(j, b)]);
                }
            }
        }
    }
    Ok(out)
}

/// `ad ρ` on `gl_d`.
pub fn adjoint_rep(rho: &TameRep) -> Result<TameRep> {
    let f = &rho.field;
    Ok(TameRep {
        field: f.clone(),
        sigma: adjoint_matrix(&rho.sigma, f)?,
        tau: adjoint_matrix(&rho.tau, f)?,
    })
}

/// Conjugation on trace-zero matrices, basis: `E_ij` (`i ≠ j`) then `E_ii - E_dd` (`i < d`).
pub fn trace_zero_adjoint_rep(rho: &TameRep) -> Result<TameRep> {
    let f = &rho.field;
    let d = rho.dim();
    let restrict = |m: &FqMatrix| -> Result<FqMatrix> {
        let full = adjoint_matrix(m, f)?;
        let mut cols = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    cols.push(vec![(i * d + j, f.one())]);
                }
            }
        }
        for i in 0..d.saturating_sub(1) {
            cols.push(vec![
                (i * d + i, f.one()),
                ((d - 1) * d + d - 1, f.neg(f.one())),
            ]);
        }
        let n = cols.len();
        let mut out = FqMatrix::zeros(n, n);
        for (c, v) in cols.iter().enumerate() {
            let mut image = vec![0; d * d];
            for &(k, coef) in v {
                for (r, x) in image.iter_mut().enumerate() {
                    *x = f.add(*x, f.mul(full[(r, k)], coef));
                }
            }
            // coordinates: off-diagonal entries, then the first d-1 diagonal entries
            let mut row = 0;
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        out[(row, c)] = image[i * d + j];
                        row += 1;
                    }
                }
            }
            for i in 0..d.saturating_sub(1) {
                out[(row + i, c)] = image[i * d + i];
            }
        }
        Ok(out)
    };
    Ok(TameRep {
        field: f.clone(),
        sigma: restrict(&rho.sigma)?,
        tau: restrict(&rho.tau)?,
    })
}

/// A random valid tame representation: a direct sum of Frobenius-orbit blocks for `τ`
/// (with `σ` cycling the eigenlines) and blocks where `τ` is a scalar of `F_q` and `σ` is
/// arbitrary, conjugated by a random invertible matrix.
pub fn random_tame_rep<R: Rng>(
    lf: &LocalFieldDesc,
    field: &FiniteField,
    dim: usize,
    rng: &mut R,
) -> TameRep {
    let f = field;
    let q = lf.q();
    let mut sigma = FqMatrix::zeros(dim, dim);
    let mut tau = FqMatrix::zeros(dim, dim);
    let mut pos = 0;
    let random_unit = |rng: &mut R| rng.gen_range(1..f.size());
    while pos < dim {
        let remaining = dim - pos;
        if rng.gen_bool(0.5) {
            // τ scalar with λ^q = λ, σ any invertible block
            let size = rng.gen_range(1..=remaining.min(2));
            let lambda = loop {
                let l = random_unit(rng);
                if f.pow(l, q as i64) == Some(l) {
                    break l;
                }
            };
            let block = loop {
                let rows: Vec<Vec<Elem>> = (0..size)
                    .map(|_| (0..size).map(|_| rng.gen_range(0..f.size())).collect())
                    .collect();
                let b = FqMatrix::from_rows(&rows);
                if b.det(f) != 0 {
                    break b;
                }
            };
            for i in 0..size {
                tau[(pos + i, pos + i)] = lambda;
                for j in 0..size {
                    sigma[(pos + i, pos + j)] = block[(i, j)];
                }
            }
            pos += size;
        } else {
            // orbit of λ under x ↦ x^q, placed so that σ e_i ∝ e_{i+1}
            let orbit = loop {
                let l = random_unit(rng);
                let mut orbit = vec![l];
                loop {
                    let next = f.pow(*orbit.last().unwrap(), q as i64).unwrap();
                    if next == l {
                        break;
                    }
                    orbit.push(next);
                }
                if orbit.len() <= remaining {
                    break orbit;
                }
            };
            let k = orbit.len();
            for i in 0..k {
                tau[(pos + i, pos + i)] = orbit[(k - i) % k];
                sigma[(pos + (i + 1) % k, pos + i)] = random_unit(rng);
            }
            pos += k;
        }
    }
    let g = loop {
        let rows: Vec<Vec<Elem>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..f.size())).collect())
            .collect();
        let g = FqMatrix::from_rows(&rows);
        if g.det(f) != 0 {
            break g;
        }
    };
    TameRep {
        field: f.clone(),
        sigma,
        tau,
    }
    .conjugate(&g)
    .expect("invertible conjugator")
}

/// Element `[[1, b], [0, d]]` of the Borel of `PGL_2`, in normalised form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BorelElement {
    pub b: Elem,
    pub d: Elem,
}

impl BorelElement {
    pub fn matrix(&self) -> FqMatrix {
        FqMatrix::from_rows(&[vec![1, self.b], vec![0, self.d]])
    }

    /// Character read off the lower-right entry: `ψ = d⁻¹`.
    pub fn psi(&self, f: &FiniteField) -> Elem {
        f.inv(self.d).expect("unit")
    }
}

/// Adjoint action of a Borel element of `PGL_2` on the Chevalley basis `(e, h, f)`,
/// as a torus element times a root-group element.
pub fn pgl2_borel_adjoint(alg: &ChevalleyAlgebra, g: BorelElement) -> FqMatrix {
    let f = alg.field();
    // [[1, b], [0, d]] = diag(1, d) · x_α(b); diag(1, d) acts on e by d⁻¹
    let dinv = f.inv(g.d).expect("unit");
    let torus = alg.ad_torus(&[1], dinv).expect("unit");
    let unip = alg.ad_unipotent(0, g.b);
    torus.mul(&unip, f)
}

/// The `PGL_2` Chevalley algebra (adjoint `A_1`) over `field`.
pub fn pgl2_algebra(field: &FiniteField) -> ChevalleyAlgebra {
    let d: BasedRootDatum = BasedRootDatum::build_simple('A', 1, Isogeny::Adjoint).expect("A1");
    ChevalleyAlgebra::new(&d, field)
}

/// Coadjoint representation `(Lie)*` attached to a Borel-valued tame representation.
pub fn pgl2_borel_coadjoint(
    field: &FiniteField,
    sigma: BorelElement,
    tau: BorelElement,
) -> Result<TameRep> {
    let alg = pgl2_algebra(field);
    let s = pgl2_borel_adjoint(&alg, sigma);
    let t = pgl2_borel_adjoint(&alg, tau);
    dual(&TameRep {
        field: field.clone(),
        sigma: s,
        tau: t,
    })
}

/// Whether both elements lie in a common maximal split torus `u T u⁻¹` of the Borel.
pub fn borel_in_torus(f: &FiniteField, elems: &[BorelElement]) -> bool {
    // u_c [[1, b], [0, d]] u_c⁻¹ is diagonal iff b + c(d - 1) = 0
    f.elements().any(|c| {
        elems
            .iter()
            .all(|g| f.add(g.b, f.mul(c, f.sub(g.d, 1))) == 0)
    })
}

/// All normalised Borel pairs `(σ, τ)` satisfying the tame relation.
pub fn borel_tame_pairs(
    lf: &LocalFieldDesc,
    field: &FiniteField,
) -> Vec<(BorelElement, BorelElement)> {
    let elems: Vec<BorelElement> = field
        .elements()
        .flat_map(|b| field.units().map(move |d| BorelElement { b, d }))
        .collect();
    let mut out = Vec::new();
    for &s in &elems {
        for &t in &elems {
            let rep = TameRep {
                field: field.clone(),
                sigma: s.matrix(),
                tau: t.matrix(),
            };
            if validate_tame_rep(lf, &rep).is_ok() {
                out.push((s, t));
            }
        }
    }
    out
}

/// `ψ ∉ {ω, ω⁻¹}` on both generators, with `ω` the mod-`p` cyclotomic character.
pub fn psi_avoids_cyclotomic(
    lf: &LocalFieldDesc,
    f: &FiniteField,
    sigma: BorelElement,
    tau: BorelElement,
) -> bool {
    let w = [f.from_int(lf.c_sigma as i64), f.from_int(lf.c_tau as i64)];
    let psi = [sigma.psi(f), tau.psi(f)];
    let winv = [f.inv(w[0]).unwrap(), f.inv(w[1]).unwrap()];
    psi != w && psi != winv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_defaults() {
        let q3 = LocalFieldDesc::qp(3).unwrap();
        assert_eq!((q3.m, q3.c_sigma, q3.c_tau), (0, 1, 2));
        let q2 = LocalFieldDesc::qp(2).unwrap();
        assert_eq!((q2.m, q2.c_tau), (1, 1));
        assert!(LocalFieldDesc::new(3, 1, 1, 1, 1, 2).is_err());
        assert!(LocalFieldDesc::new(2, 1, 1, 0, 1, 1).is_err());
        let cyc = LocalFieldDesc::cyclotomic(3, 1).unwrap();
        assert_eq!((cyc.e, cyc.m), (2, 1));
        let parsed: LocalFieldDesc = serde_json::from_str(r#"{"p":3,"f":1,"e":1,"m":0}"#).unwrap();
        assert_eq!(parsed, q3);
    }

    #[test]
    fn tame_relation() {
        let lf = LocalFieldDesc::qp(3).unwrap();
        let f9 = FiniteField::new(3, 2).unwrap();
        let ok = TameRep::character(&f9, 1, 2);
        assert!(validate_tame_rep(&lf, &ok).is_ok());
        // an element of order 8 in F_9^× does not satisfy τ = τ^3
        let gen = f9.generator();
        let bad = TameRep::character(&f9, 1, gen);
        assert_eq!(
            validate_tame_rep(&lf, &bad),
            Err(Error::TameRelation { row: 0, col: 0 })
        );
    }

    #[test]
    fn trivial_line() {
        for (lf, expected) in [
            (LocalFieldDesc::qp(3).unwrap(), 2),
            (LocalFieldDesc::qp(2).unwrap(), 3),
            (LocalFieldDesc::unramified(3, 2).unwrap(), 3),
        ] {
            let f = FiniteField::prime(lf.p).unwrap();
            let one = TameRep::trivial(&f, 1);
            assert_eq!(h1_via_ep(&lf, &one).unwrap(), expected);
        }
    }

    #[test]
    fn double_twist_is_identity() {
        let lf = LocalFieldDesc::qp(5).unwrap();
        let f = FiniteField::prime(5).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
        for _ in 0..10 {
            let rho = random_tame_rep(&lf, &f, 3, &mut rng);
            validate_tame_rep(&lf, &rho).unwrap();
            let back = dual_twist(&lf, &dual_twist(&lf, &rho).unwrap()).unwrap();
            assert_eq!(back, rho);
        }
    }

    #[test]
    fn adjoint_of_diagonal() {
        let lf = LocalFieldDesc::qp(3).unwrap();
        let f = FiniteField::prime(3).unwrap();
        let rho = TameRep::new(
            f.clone(),
            FqMatrix::diagonal(&[1, 2]),
            FqMatrix::identity(2),
        )
        .unwrap();
        let ad = adjoint_rep(&rho).unwrap();
        validate_tame_rep(&lf, &ad).unwrap();
        assert_eq!(h0(&ad), 2);
        assert_eq!(trace_zero_adjoint_rep(&rho).unwrap().dim(), 3);
    }

    #[test]
    fn borel_pgl2_battery() {
        let lf = LocalFieldDesc::new(3, 1, 1, 0, 1, 2).unwrap();
        let f9 = FiniteField::new(3, 2).unwrap();
        let pairs = borel_tame_pairs(&lf, &f9);
        let mut survivors = 0;
        for &(s, t) in &pairs {
            let w = pgl2_borel_coadjoint(&f9, s, t).unwrap();
            // same answer from conjugation on trace-zero matrices
            let direct = dual(
                &trace_zero_adjoint_rep(&TameRep::new(f9.clone(), s.matrix(), t.matrix()).unwrap())
                    .unwrap(),
            )
            .unwrap();
            assert_eq!(
                special_level(&lf, &w).unwrap(),
                special_level(&lf, &direct).unwrap()
            );
            if !borel_in_torus(&f9, &[s, t]) && psi_avoids_cyclotomic(&lf, &f9, s, t) {
                survivors += 1;
                assert_eq!(special_level(&lf, &w).unwrap(), 0);
            }
        }
        assert!(survivors > 0);
        let (s, t) = (BorelElement { b: 0, d: 1 }, BorelElement { b: 0, d: 2 });
        let w = pgl2_borel_coadjoint(&f9, s, t).unwrap();
        assert!(special_level(&lf, &w).unwrap() >= 1);
    }
}

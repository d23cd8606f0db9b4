//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line; run with
//! `cargo test -p defspace --test acceptance -- --nocapture` to see them.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use defspace::chevalley::{
    adjoint_invariants_sc, coadjoint_invariants_sc, nilradical_dual_invariants, ChevalleyAlgebra,
    LeviGenerators,
};
use defspace::components::{component_count, mu_group, GaloisExtDesc};
use defspace::extensions::{
    build_extension, cocycle_catalogue, extension_catalogue, extension_to_cocycle,
};
use defspace::field::{FiniteField, FqMatrix};
use defspace::galois::{
    adjoint_rep, borel_in_torus, borel_tame_pairs, defect, dual_twist, fiber_dim_bound, h0,
    h1_via_ep, h2_via_duality, pgl2_borel_coadjoint, presentation_numbers, psi_avoids_cyclotomic,
    random_tame_rep, relative_presentation, special_level, trace_zero_adjoint_rep, BorelElement,
    LocalFieldDesc, TameRep,
};
use defspace::group::FiniteGroup;
use defspace::intmat::{kernel_basis, IntMatrix};
use defspace::lattice::LatticeWithAction;
use defspace::levi::{
    enumerate_standard_levis, has_codim2_levi, parabolic_partition, split_codim2, LeviDescriptor,
};
use defspace::root_datum::{parse_type, GenReductiveDatum};
use defspace::semisimplify::{
    brauer_nesbitt_equal, char_poly_word, is_absolutely_irreducible, random_block_triangular,
    reduced_words, semisimplify, FqMatrixRep,
};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn datum(s: &str) -> GenReductiveDatum {
    GenReductiveDatum::connected(parse_type(s).unwrap())
}

fn coadjoint_vanishing() -> Check {
    let start = Instant::now();
    for t in ["A1", "A2", "A3", "B2", "C3", "G2"] {
        for p in [2, 3, 5] {
            let dim = coadjoint_invariants_sc(&parse_type(t).unwrap(), p)
                .map_err(|e| e.to_string())?
                .dim;
            ensure(dim == 0, || {
                format!("{t} at p = {p}: coadjoint invariants have dimension {dim}")
            })?;
        }
    }
    let adj = adjoint_invariants_sc(&parse_type("A1").unwrap(), 2)
        .map_err(|e| e.to_string())?
        .dim;
    ensure(adj == 1, || {
        format!("sl2 at p = 2: adjoint invariants {adj}, expected 1")
    })?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1}s"))
}

const RANK_AT_MOST_THREE: &[&str] = &[
    "A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A1xA2", "A1xB2", "A1xG2", "A1xA1xA1",
    "A2_ad", "B3_ad", "C3_ad", "GL2", "GL3", "GL4", "Sp4", "SO7", "PGL4",
];

fn nilradical_duals() -> Check {
    for t in RANK_AT_MOST_THREE {
        let d = datum(t);
        for levi in enumerate_standard_levis(&d)
            .iter()
            .filter(|l| !l.is_whole_group())
        {
            for p in [2, 3] {
                let dim = nilradical_dual_invariants(&d, levi, p, &LeviGenerators::Full)
                    .map_err(|e| e.to_string())?
                    .dim;
                ensure(dim == 0, || {
                    format!(
                        "{t}, Levi {:?}, p = {p}: invariants of dimension {dim}",
                        levi.subset
                    )
                })?;
            }
        }
    }
    Ok(())
}

/// `dim F^×/(F^×)^p` from `F^× ≅ Z × μ_{q-1} × μ_{p^∞}(F) × Z_p^{[F:Q_p]}`; an unramified
/// extension of `Q_p` contains `ζ_p` only for `p = 2`.
fn kummer_oracle(p: u32, f: u32) -> usize {
    1 + f as usize + usize::from(p == 2)
}

fn kummer() -> Check {
    for p in [2, 3, 5] {
        for f in [1, 2, 3] {
            let lf = LocalFieldDesc::unramified(p, f).map_err(|e| e.to_string())?;
            let kappa = FiniteField::prime(p).unwrap();
            let h1 = h1_via_ep(&lf, &TameRep::trivial(&kappa, 1)).map_err(|e| e.to_string())?;
            let oracle = kummer_oracle(p, f);
            ensure(h1 == oracle, || {
                format!("p = {p}, f = {f}: h1 = {h1}, oracle {oracle}")
            })?;
        }
    }
    Ok(())
}

fn pi1_and_covers() -> Check {
    for n in 2..=12 {
        let pi1 = parse_type(&format!("PGL{n}")).unwrap().pi1_derived();
        ensure(pi1 == vec![n as i64], || format!("PGL{n}: pi1 {pi1:?}"))?;
    }
    let cover = parse_type("PGL12").unwrap().etale_pi1_cover(2);
    let pi1 = cover.pi1_derived();
    ensure(pi1 == vec![3], || {
        format!("cover of PGL12 at p = 2 has pi1 {pi1:?}")
    })?;
    ensure(cover.is_pi1_etale(2), || "cover is not étale at 2".into())
}

/// Brute-force `|{x ∈ (Z/N)^n : χ(δ) A_δ x = x ∀δ}|` split by the orders of elements.
fn fixed_point_census(ext: &GaloisExtDesc, lat: &LatticeWithAction) -> BTreeMap<i64, usize> {
    let n = lat.rank();
    let modulus = ext.mu_order();
    let total = (modulus as usize).pow(n as u32);
    let mut census = BTreeMap::new();
    for code in 0..total {
        let mut c = code;
        let x: Vec<i64> = (0..n)
            .map(|_| {
                let v = (c % modulus as usize) as i64;
                c /= modulus as usize;
                v
            })
            .collect();
        let fixed = lat.action().iter().zip(ext.chi()).all(|(a, &chi)| {
            a.mul_vec(&x)
                .iter()
                .zip(&x)
                .all(|(y, v)| (chi * y - v).rem_euclid(modulus) == 0)
        });
        if fixed {
            let mut ord = 1;
            while x.iter().any(|v| (v * ord).rem_euclid(modulus) != 0) {
                ord *= ext.base().p as i64;
            }
            *census.entry(ord).or_insert(0) += 1;
        }
    }
    census
}

/// Element-order census of `⊕ Z/n_i` (all `n_i` powers of one prime).
fn census_of_factors(factors: &[i64], p: i64, modulus: i64) -> BTreeMap<i64, usize> {
    let mut census = BTreeMap::new();
    let mut ord = 1;
    let mut prev = 0;
    while ord <= modulus.max(1) {
        let killed: usize = factors.iter().map(|&n| n.min(ord) as usize).product();
        if killed > prev {
            census.insert(ord, killed - prev);
        }
        prev = killed;
        ord *= p;
    }
    census
}

/// Action of a cyclic group given by the image of a chosen generator.
fn cyclic_lattice(
    group: &FiniteGroup,
    generator: usize,
    image: &IntMatrix,
) -> Option<LatticeWithAction> {
    let n = image.nrows();
    let mut action = vec![IntMatrix::zeros(n, n); group.order()];
    let mut x = group.identity();
    let mut m = IntMatrix::identity(n);
    for _ in 0..group.order() {
        action[x] = m.clone();
        x = group.mul(x, generator);
        m = m.mul(image);
    }
    LatticeWithAction::new(n, group.clone(), action).ok()
}

fn component_counts() -> Check {
    for p in [3, 5, 7] {
        for d in 1..=4 {
            let m = datum(&format!("GL{d}")).torus_quotient_lattice();
            let ext = GaloisExtDesc::trivial(LocalFieldDesc::qp(p).unwrap());
            let c = component_count(&ext, &m, true, false)
                .map_err(|e| e.to_string())?
                .count;
            ensure(c == 1, || format!("GL{d} over Q{p}: {c} components"))?;
        }
    }
    for d in 1..=4 {
        let m = datum(&format!("GL{d}")).torus_quotient_lattice();
        let ext = GaloisExtDesc::trivial(LocalFieldDesc::qp(2).unwrap());
        let c = component_count(&ext, &m, true, false)
            .map_err(|e| e.to_string())?
            .count;
        ensure(c == 2, || format!("GL{d} over Q2: {c} components"))?;
    }
    let sl2 = datum("SL2").torus_quotient_lattice();
    let c = component_count(
        &GaloisExtDesc::trivial(LocalFieldDesc::qp(3).unwrap()),
        &sl2,
        true,
        false,
    )
    .unwrap()
    .count;
    ensure(c == 1, || format!("SL2: {c} components"))?;
    let twist_ext = GaloisExtDesc::cyclotomic(3, 1).unwrap();
    let sign = cyclic_lattice(twist_ext.group(), 1, &IntMatrix::from_rows(&[vec![-1]])).unwrap();
    let c = component_count(&twist_ext, &sign, true, false)
        .unwrap()
        .count;
    ensure(c == 3, || format!("Q3(ζ3) twist: {c} components"))?;

    // brute force over instances with at most 3^6 points
    let exts = vec![
        GaloisExtDesc::trivial(LocalFieldDesc::qp(2).unwrap()),
        GaloisExtDesc::trivial(LocalFieldDesc::qp(3).unwrap()),
        GaloisExtDesc::cyclotomic(2, 2).unwrap(),
        GaloisExtDesc::cyclotomic(2, 3).unwrap(),
        GaloisExtDesc::cyclotomic(3, 1).unwrap(),
        GaloisExtDesc::cyclotomic(3, 2).unwrap(),
        GaloisExtDesc::cyclotomic(5, 1).unwrap(),
    ];
    let images: Vec<IntMatrix> = vec![
        IntMatrix::from_rows(&[vec![1]]),
        IntMatrix::from_rows(&[vec![-1]]),
        IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
        IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]),
        IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]),
        IntMatrix::from_rows(&[vec![1, 1], vec![0, -1]]),
        IntMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]),
        IntMatrix::from_rows(&[vec![-1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]),
        IntMatrix::identity(3),
        IntMatrix::from_rows(&[
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, -1],
            vec![0, 0, 1, 0],
        ]),
    ];
    let mut instances = 0;
    for ext in &exts {
        let g = ext.group();
        // generator: an element of maximal order (these groups are cyclic)
        let gen = g.elements().max_by_key(|&x| g.element_order(x)).unwrap();
        if g.element_order(gen) != g.order() {
            continue;
        }
        for image in &images {
            let Some(lat) = cyclic_lattice(g, gen, image) else {
                continue;
            };
            let points = (ext.mu_order() as u64).pow(lat.rank() as u32);
            if points > 729 {
                continue;
            }
            instances += 1;
            let factors = mu_group(ext, &lat).map_err(|e| e.to_string())?;
            let brute = fixed_point_census(ext, &lat);
            let from_factors = census_of_factors(&factors, ext.base().p as i64, ext.mu_order());
            ensure(brute == from_factors, || {
                format!("mu {factors:?} disagrees with brute force {brute:?}")
            })?;
        }
    }
    ensure(instances >= 30, || {
        format!("only {instances} brute-force instances")
    })
}

/// Associativity, identity and inverses, checked directly on the table.
fn verify_group_axioms(g: &FiniteGroup) -> bool {
    let t = g.table();
    let n = t.len();
    let Some(e) = (0..n).find(|&e| (0..n).all(|a| t[e][a] == a && t[a][e] == a)) else {
        return false;
    };
    (0..n).all(|a| (0..n).any(|b| t[a][b] == e && t[b][a] == e))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

fn extension_roundtrips() -> Check {
    let cocycles = cocycle_catalogue();
    ensure(cocycles.len() >= 100, || {
        format!("catalogue has only {} cocycles", cocycles.len())
    })?;
    for z in &cocycles {
        ensure(z.n.order() <= 12 && z.delta.order() <= 4, || {
            "catalogue bounds".into()
        })?;
        let ext = build_extension(z).map_err(|e| e.to_string())?;
        ensure(verify_group_axioms(&ext.group), || {
            "built table is not a group".into()
        })?;
        let back = extension_to_cocycle(&ext).map_err(|e| e.to_string())?;
        ensure(&back == z, || {
            format!(
                "roundtrip I fails for |N| = {}, |Δ| = {}",
                z.n.order(),
                z.delta.order()
            )
        })?;
    }
    for ext in extension_catalogue().map_err(|e| e.to_string())? {
        let z = extension_to_cocycle(&ext).map_err(|e| e.to_string())?;
        let rebuilt = build_extension(&z).map_err(|e| e.to_string())?;
        ensure(rebuilt.group.table() == ext.group.table(), || {
            "roundtrip II fails".into()
        })?;
    }
    Ok(())
}

/// Multiset of per-block fingerprints (dimension and char polys of short words).
fn block_fingerprints(blocks: &[FqMatrixRep]) -> Vec<(usize, Vec<Vec<u32>>)> {
    let words = reduced_words(blocks[0].generators().len(), 2);
    let mut out: Vec<_> = blocks
        .iter()
        .map(|b| {
            (
                b.dim(),
                words
                    .iter()
                    .map(|w| char_poly_word(b, w).unwrap())
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out
}

fn semisimplification() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cases = [
        (FiniteField::new(3, 1).unwrap(), 4usize),
        (FiniteField::new(2, 2).unwrap(), 3),
    ];
    for (f, d) in &cases {
        for trial in 0..100 {
            // random composition of d into blocks
            let mut blocks = Vec::new();
            let mut left = *d;
            while left > 0 {
                let b = rng.gen_range(1..=left);
                blocks.push(b);
                left -= b;
            }
            let rep = random_block_triangular(f, &blocks, 2, trial % 2 == 0, &mut rng);
            let ss = semisimplify(&rep).map_err(|e| e.to_string())?;
            let verdict = brauer_nesbitt_equal(&rep, &ss.rep, 6).map_err(|e| e.to_string())?;
            ensure(verdict.is_consistent(), || {
                format!("trial {trial}: {verdict:?}")
            })?;
            let again = semisimplify(&ss.rep).map_err(|e| e.to_string())?;
            ensure(
                block_fingerprints(&again.blocks) == block_fingerprints(&ss.blocks),
                || format!("trial {trial}: not idempotent"),
            )?;
            for b in &ss.blocks {
                let irr = is_absolutely_irreducible(b).map_err(|e| e.to_string())?;
                ensure(irr.irreducible, || {
                    format!("trial {trial}: reducible block")
                })?;
            }
        }
    }
    Ok(())
}

fn sp4_tame_rep<R: Rng>(alg: &ChevalleyAlgebra, lf: &LocalFieldDesc, rng: &mut R) -> TameRep {
    let d = alg.datum();
    let f = alg.field();
    let n = d.rank_x();
    let unit = |rng: &mut R| rng.gen_range(1..f.size());
    let q = lf.q() as i64;
    let fq_unit = |rng: &mut R| loop {
        let u = rng.gen_range(1..f.size());
        if f.pow(u, q) == Some(u) {
            return u;
        }
    };
    let random_lambda =
        |rng: &mut R| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-2..=2)).collect() };
    // σ: torus element, possibly times a root element; τ: torus element over F_q commuting with σ
    let lambda1 = random_lambda(rng);
    let mut sigma = alg.ad_torus(&lambda1, unit(rng)).unwrap();
    let lambda2 = if rng.gen_bool(0.5) {
        let root = rng.gen_range(0..d.num_roots());
        sigma = sigma.mul(&alg.ad_unipotent(root, rng.gen_range(0..f.size())), f);
        let chi = IntMatrix::from_rows(&[d.root(root).character.clone()]);
        let ker = kernel_basis(&chi);
        let mut v = vec![0; n];
        for r in 0..ker.nrows() {
            let c = rng.gen_range(-2..=2);
            for (x, y) in v.iter_mut().zip(ker.row(r)) {
                *x += c * y;
            }
        }
        v
    } else {
        random_lambda(rng)
    };
    let tau = alg.ad_torus(&lambda2, fq_unit(rng)).unwrap();
    TameRep::new(f.clone(), sigma, tau).unwrap()
}

fn presentation_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fields = [
        (
            LocalFieldDesc::qp(2).unwrap(),
            FiniteField::new(2, 2).unwrap(),
        ),
        (
            LocalFieldDesc::qp(3).unwrap(),
            FiniteField::new(3, 2).unwrap(),
        ),
        (
            LocalFieldDesc::qp(5).unwrap(),
            FiniteField::new(5, 1).unwrap(),
        ),
        (
            LocalFieldDesc::cyclotomic(3, 1).unwrap(),
            FiniteField::new(3, 2).unwrap(),
        ),
    ];
    let gl1 = datum("GL1");
    let trivial = datum("T0");
    for (lf, kappa) in &fields {
        let ef = lf.degree() as i64;
        for g in ["GL2", "GL3", "Sp4"] {
            let dg = datum(g);
            let dim_g = dg.dim_g() as i64;
            let sp4 = ChevalleyAlgebra::new(dg.base(), kappa);
            for _ in 0..50 {
                let (ad, ad0, dh) = if g == "Sp4" {
                    let ad = sp4_tame_rep(&sp4, lf, &mut rng);
                    (ad.clone(), ad, &trivial)
                } else {
                    let d = if g == "GL2" { 2 } else { 3 };
                    let rho = random_tame_rep(lf, kappa, d, &mut rng);
                    (
                        adjoint_rep(&rho).unwrap(),
                        trace_zero_adjoint_rep(&rho).unwrap(),
                        &gl1,
                    )
                };
                let pres = presentation_numbers(&dg, lf, &ad).map_err(|e| e.to_string())?;
                ensure(pres.relative_dim == dim_g * (ef + 1), || {
                    format!("{g}: r - s = {}", pres.relative_dim)
                })?;
                let rel = relative_presentation(&dg, dh, lf, &ad0).map_err(|e| e.to_string())?;
                let expected = (dim_g - dh.dim_g() as i64) * (ef + 1);
                ensure(rel.relative_dim == expected, || {
                    format!("{g}: r - t = {}, expected {expected}", rel.relative_dim)
                })?;
                for v in [&ad, &ad0] {
                    let dt = dual_twist(lf, v).unwrap();
                    let lhs = h2_via_duality(lf, &dt).map_err(|e| e.to_string())?;
                    ensure(lhs == h0(v), || {
                        format!("{g}: h2(V*(1)) = {lhs}, h0(V) = {}", h0(v))
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// Semisimple rank ≤ 4 data containing an `A_1` factor.
fn a1_data() -> Vec<String> {
    let others = [
        "", "A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA1", "A1xA2", "A1xB2", "A1xG2",
        "A1xA1xA1",
    ];
    let mut out = Vec::new();
    for o in others {
        let body = if o.is_empty() {
            "A1".to_string()
        } else {
            format!("A1x{o}")
        };
        out.push(body.clone());
        out.push(
            body.split('x')
                .map(|f| format!("{f}_ad"))
                .collect::<Vec<_>>()
                .join("x"),
        );
    }
    out.extend(
        [
            "GL2", "GL2xGL1", "GL1xSL2", "SL2xGL2", "PGL2xSL3", "GL2xSp4", "GL2xGL3",
        ]
        .map(String::from),
    );
    out
}

fn levi_split() -> Check {
    for t in a1_data() {
        let d = datum(&t);
        let levi = has_codim2_levi(&d).ok_or_else(|| format!("{t}: no codimension-2 Levi"))?;
        let split = split_codim2(&d, &levi).map_err(|e| format!("{t}: {e}"))?;
        ensure(split.checked == levi.phi_l.len() * 18, || {
            format!("{t}: only {} combinations checked", split.checked)
        })?;
    }
    for t in ["SL3", "G2"] {
        ensure(has_codim2_levi(&datum(t)).is_none(), || {
            format!("{t} has a codimension-2 Levi")
        })?;
    }
    Ok(())
}

/// `E_ij` for the root `ε_i - ε_j` of a `GL_n` datum.
fn gl_root_entry(d: &GenReductiveDatum, k: usize) -> (usize, usize) {
    let chi = &d.base().root(k).character;
    (
        chi.iter().position(|&x| x == 1).unwrap(),
        chi.iter().position(|&x| x == -1).unwrap(),
    )
}

fn lie_u_rep(d: &GenReductiveDatum, levi: &LeviDescriptor, rho: &TameRep) -> TameRep {
    let n = d.base().rank_x();
    let ad = adjoint_rep(rho).unwrap();
    let idx: Vec<usize> = levi
        .phi_u
        .iter()
        .map(|&k| gl_root_entry(d, k))
        .map(|(i, j)| i * n + j)
        .collect();
    TameRep::new(
        rho.field.clone(),
        ad.sigma.submatrix(&idx, &idx),
        ad.tau.submatrix(&idx, &idx),
    )
    .unwrap()
}

fn defect_bounds() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let fields = [
        (
            LocalFieldDesc::qp(2).unwrap(),
            FiniteField::new(2, 2).unwrap(),
        ),
        (
            LocalFieldDesc::qp(3).unwrap(),
            FiniteField::new(3, 2).unwrap(),
        ),
        (
            LocalFieldDesc::qp(5).unwrap(),
            FiniteField::new(5, 1).unwrap(),
        ),
    ];
    for (lf, kappa) in &fields {
        for g in ["GL2", "GL3", "GL4"] {
            let d = datum(g);
            let n = d.base().rank_x();
            for levi in enumerate_standard_levis(&d)
                .iter()
                .filter(|l| !l.is_whole_group())
            {
                let opposite =
                    parabolic_partition(&d, &levi.lambda.iter().map(|x| -x).collect::<Vec<_>>())
                        .unwrap();
                for _ in 0..10 {
                    // diagonal ρ: τ has entries in F_q, σ arbitrary
                    let q = lf.q() as i64;
                    let tau: Vec<u32> = (0..n)
                        .map(|_| loop {
                            let u = rng.gen_range(1..kappa.size());
                            if kappa.pow(u, q) == Some(u) {
                                break u;
                            }
                        })
                        .collect();
                    let sigma: Vec<u32> = (0..n).map(|_| rng.gen_range(1..kappa.size())).collect();
                    let rho = TameRep::new(
                        kappa.clone(),
                        FqMatrix::diagonal(&sigma),
                        FqMatrix::diagonal(&tau),
                    )
                    .unwrap();
                    let reps = [lie_u_rep(&d, levi, &rho), lie_u_rep(&d, &opposite, &rho)];
                    let delta = defect(lf, levi, &reps).map_err(|e| e.to_string())?;
                    ensure(2 * delta <= levi.dim_g - levi.dim_l, || {
                        format!("{g}: δ = {delta} exceeds the bound")
                    })?;
                }
            }
        }
    }
    let gl2 = datum("GL2");
    let torus = parabolic_partition(&gl2, &[1, 0]).unwrap();
    let q2 = LocalFieldDesc::qp(2).unwrap();
    let f2 = FiniteField::prime(2).unwrap();
    let trivial = TameRep::trivial(&f2, 2);
    let delta =
        defect(&q2, &torus, &[lie_u_rep(&gl2, &torus, &trivial)]).map_err(|e| e.to_string())?;
    ensure(2 * delta == torus.dim_g - torus.dim_l, || {
        format!("Q2 torus example: δ = {delta}")
    })?;
    let bound = fiber_dim_bound(&gl2, &torus, &LocalFieldDesc::qp(3).unwrap(), 0);
    ensure(bound == 3, || {
        format!("fiber_dim_bound(GL2, T, Q3, 0) = {bound}")
    })
}

fn borel_pgl2() -> Check {
    let lf = LocalFieldDesc::new(3, 1, 1, 0, 1, 2).map_err(|e| e.to_string())?;
    let f9 = FiniteField::new(3, 2).unwrap();
    let mut survivors = 0;
    for (s, t) in borel_tame_pairs(&lf, &f9) {
        if borel_in_torus(&f9, &[s, t]) || !psi_avoids_cyclotomic(&lf, &f9, s, t) {
            continue;
        }
        survivors += 1;
        let w = pgl2_borel_coadjoint(&f9, s, t).map_err(|e| e.to_string())?;
        let level = special_level(&lf, &w).map_err(|e| e.to_string())?;
        ensure(level == 0, || {
            format!("{s:?}, {t:?}: special level {level}")
        })?;
    }
    ensure(survivors > 0, || {
        "no representation satisfies the hypotheses".into()
    })?;
    let (s, t) = (BorelElement { b: 0, d: 1 }, BorelElement { b: 0, d: 2 });
    ensure(!psi_avoids_cyclotomic(&lf, &f9, s, t), || {
        "counterexample should have ψ = ω".into()
    })?;
    let w = pgl2_borel_coadjoint(&f9, s, t).map_err(|e| e.to_string())?;
    let level = special_level(&lf, &w).map_err(|e| e.to_string())?;
    ensure(level >= 1, || {
        format!("counterexample has special level {level}")
    })
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("1 coadjoint invariants vanish", coadjoint_vanishing),
        ("2 nilradical dual invariants vanish", nilradical_duals),
        ("3 Kummer count of h1", kummer),
        ("4 fundamental groups and covers", pi1_and_covers),
        ("5 component counts and mu oracle", component_counts),
        ("6 extension roundtrips", extension_roundtrips),
        ("7 semisimplification", semisimplification),
        (
            "8 presentation identities and duality",
            presentation_identities,
        ),
        ("9 codimension-2 Levi splitting", levi_split),
        ("10 defect bounds", defect_bounds),
        ("11 Borel PGL2 special level", borel_pgl2),
    ];
    let mut failures = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS  {name}  ({:.2}s)", start.elapsed().as_secs_f64()),
            Err(e) => {
                println!("FAIL  {name}: {e}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

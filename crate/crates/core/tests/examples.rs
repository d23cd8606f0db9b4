//! Small worked instances of each operation with hand-computed answers.

use defspace::components::{component_count, GaloisExtDesc};
use defspace::extensions::{build_extension, cyclic_carry_cocycle, GenTwoCocycle};
use defspace::field::{FiniteField, FqMatrix};
use defspace::galois::{
    bound_y_check, defect, fiber_dim_bound, levi_centre_dim, relative_presentation, special_level,
    trace_zero_adjoint_rep, LocalFieldDesc, TameRep,
};
use defspace::group::FiniteGroup;
use defspace::lattice::LatticeWithAction;
use defspace::levi::parabolic_partition;
use defspace::root_datum::{parse_type, GenReductiveDatum};
use defspace::semisimplify::{is_semisimple, module_isomorphism, semisimplify, spin, FqMatrixRep};

fn datum(s: &str) -> GenReductiveDatum {
    GenReductiveDatum::connected(parse_type(s).unwrap())
}

#[test]
fn special_level_of_trivial_line() {
    for (p, expected) in [(3, 0), (5, 0), (2, 1)] {
        let lf = LocalFieldDesc::qp(p).unwrap();
        let f = FiniteField::prime(p).unwrap();
        assert_eq!(
            special_level(&lf, &TameRep::trivial(&f, 1)).unwrap(),
            expected,
            "p = {p}"
        );
    }
}

#[test]
fn defect_and_fibre_bounds() {
    let gl2 = datum("GL2");
    let whole = parabolic_partition(&gl2, &[0, 0]).unwrap();
    let q3 = LocalFieldDesc::qp(3).unwrap();
    assert_eq!(defect(&q3, &whole, &[]).unwrap(), 0);
    let torus = parabolic_partition(&gl2, &[1, 0]).unwrap();
    let f3 = FiniteField::prime(3).unwrap();
    assert_eq!(defect(&q3, &torus, &[TameRep::trivial(&f3, 1)]).unwrap(), 0);
    assert!(defect(&q3, &torus, &[TameRep::trivial(&f3, 2)]).is_err());
    // L = G: dim G - dim Z(G)
    assert_eq!(fiber_dim_bound(&gl2, &whole, &q3, 0), 3);
    let gl3 = datum("GL3");
    let levi = parabolic_partition(&gl3, &[1, 1, 0]).unwrap();
    assert_eq!(levi_centre_dim(&gl3, &levi), 2);
    assert_eq!(
        fiber_dim_bound(&gl3, &levi, &LocalFieldDesc::qp(2).unwrap(), 1),
        10
    );
    let check = bound_y_check(&gl2, &torus, &q3, 3);
    assert_eq!((check.lhs, check.rhs, check.holds), (5, 4, true));
}

#[test]
fn relative_presentations() {
    let q3 = LocalFieldDesc::qp(3).unwrap();
    let f3 = FiniteField::prime(3).unwrap();
    let ad0 = trace_zero_adjoint_rep(&TameRep::trivial(&f3, 2)).unwrap();
    let rel = relative_presentation(&datum("GL2"), &datum("GL1"), &q3, &ad0).unwrap();
    assert_eq!(rel.relative_dim, 6);
    let same = relative_presentation(&datum("GL2"), &datum("GL2"), &q3, &TameRep::trivial(&f3, 0))
        .unwrap();
    assert_eq!((same.r, same.t), (0, 0));
}

#[test]
fn conditional_counts() {
    let m = datum("PGL2xGL1").torus_quotient_lattice();
    let ext = GaloisExtDesc::trivial(LocalFieldDesc::qp(2).unwrap());
    let pgl2 = parse_type("PGL2").unwrap();
    let c = component_count(&ext, &m, pgl2.is_pi1_etale(2), false).unwrap();
    assert!(c.conditional);
    assert_eq!(c.count, 2);
    let trivial = LatticeWithAction::trivial(0, FiniteGroup::trivial());
    assert_eq!(
        component_count(&ext, &trivial, true, false).unwrap().count,
        1
    );
}

#[test]
fn semidirect_products() {
    // S3 = Z/3 ⋊ Z/2
    let n = FiniteGroup::cyclic(3);
    let inv: Vec<usize> = n.elements().map(|x| n.inv(x)).collect();
    let z = GenTwoCocycle::semidirect(n.clone(), FiniteGroup::cyclic(2), vec![vec![0, 1, 2], inv]);
    let g = build_extension(&z).unwrap().group;
    assert!(!g.is_abelian());
    assert_eq!(g.elements().filter(|&a| g.element_order(a) == 2).count(), 3);
    // Z/4 by Z/2 with trivial action and carry 2 is abelian of exponent 4
    let z = cyclic_carry_cocycle(&FiniteGroup::cyclic(4), 2, vec![vec![0, 1, 2, 3]; 2], 2);
    let g = build_extension(&z).unwrap().group;
    assert!(g.is_abelian());
    assert_eq!(g.elements().map(|a| g.element_order(a)).max(), Some(4));
}

#[test]
fn graded_pieces() {
    let f5 = FiniteField::prime(5).unwrap();
    let upper = FqMatrixRep::new(
        f5.clone(),
        vec![FqMatrix::from_rows(&[vec![2, 1], vec![0, 3]])],
    )
    .unwrap();
    let ss = semisimplify(&upper).unwrap();
    let g = &ss.rep.generators()[0];
    assert_eq!((g[(0, 1)], g[(1, 0)]), (0, 0));
    let mut diag = vec![g[(0, 0)], g[(1, 1)]];
    diag.sort_unstable();
    assert_eq!(diag, vec![2, 3]);
    // distinct eigenvalues: already semisimple
    assert!(is_semisimple(&upper).unwrap());
    assert!(module_isomorphism(&upper, &ss.rep).unwrap().is_some());

    let f3 = FiniteField::prime(3).unwrap();
    let block = FqMatrix::from_rows(&[vec![1, 1, 1], vec![0, 2, 0], vec![0, 1, 1]]);
    let rep = FqMatrixRep::new(f3, vec![block]).unwrap();
    assert_eq!(
        spin(&rep, &[1, 0, 0]).unwrap().to_rows(),
        vec![vec![1, 0, 0]]
    );
}

#[test]
fn json_roundtrips() {
    let lf = LocalFieldDesc::cyclotomic(3, 2).unwrap();
    let text = serde_json::to_string(&lf).unwrap();
    assert_eq!(serde_json::from_str::<LocalFieldDesc>(&text).unwrap(), lf);
    let ext = GaloisExtDesc::cyclotomic(5, 1).unwrap();
    let back = GaloisExtDesc::from_json(
        serde_json::from_str(&serde_json::to_string(&ext.to_json()).unwrap()).unwrap(),
    )
    .unwrap();
    assert_eq!(back, ext);
    let f9 = FiniteField::new(3, 2).unwrap();
    let rep = TameRep::character(&f9, 1, 2);
    let j = serde_json::to_string(&rep.to_json()).unwrap();
    assert_eq!(
        TameRep::from_json(&serde_json::from_str(&j).unwrap()).unwrap(),
        rep
    );
}

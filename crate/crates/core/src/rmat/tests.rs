use super::*;
use crate::coeffring::{HbarPoly, RatFun, Ring, Scalar, Var};
use crate::freealg::{substitute_constants, AlgebraTag, Gen, NCPoly};

fn h() -> HbarPoly {
    HbarPoly::hbar()
}

#[test]
fn yangian_r_scalar_case() {
    let r = yangian_r(1, 3).unwrap();
    let e = r.entry2(1, 1, 1, 1);
    assert_eq!(e.coeff([0, 0, 0]).unwrap(), HbarPoly::one());
    assert_eq!(e.coeff([-1, 0, 0]).unwrap(), h().neg());
    assert_eq!(e.coeff([-3, 2, 0]).unwrap(), h().neg());
    assert!(e.coeff([-4, 3, 0]).is_err());
}

#[test]
fn yangian_r_off_diagonal_entry() {
    let r = yangian_r(2, 2).unwrap();
    let e = r.entry2(1, 2, 2, 1);
    assert_eq!(e.coeff([-1, 0, 0]).unwrap(), h().neg());
    assert_eq!(e.coeff([0, 0, 0]).unwrap(), HbarPoly::zero());
    assert_eq!(
        r.entry2(1, 1, 2, 2).coeff([0, 0, 0]).unwrap(),
        HbarPoly::one()
    );
    assert!(r.entry2(1, 2, 1, 2).is_zero());
}

#[test]
fn quantum_r_scalar_case() {
    let r = quantum_r(1, Var::U, Var::V).unwrap();
    let e = r.entry2(1, 1, 1, 1);
    assert_eq!(e.coeff([1, 0, 0]).unwrap(), RatFun::q_pow(-1));
    assert_eq!(e.coeff([0, 1, 0]).unwrap(), RatFun::q().neg());
    assert_eq!(e.terms().count(), 2);
}

#[test]
fn partial_transpose_moves_entries() {
    let p = permutation::<HbarPoly>(2);
    let t = transpose_first(&p, None).unwrap();
    assert!(t.entry2(1, 2, 2, 1).is_zero());
    assert_eq!(
        t.entry2(2, 1, 2, 1).coeff([0, 0, 0]).unwrap(),
        HbarPoly::one()
    );
    let id = LegMat::identity(2, 2, HbarPoly::one());
    assert_eq!(transpose_first(&id, None).unwrap(), id);
}

#[test]
fn twisted_argument_at_rank_one() {
    // z - ħ at z = -u-v is -(u+v)(1 + ħ(u+v)^{-1})
    let r = yangian_r_cleared(1, [1, 0, 0]).unwrap();
    let t = transpose_first(&r, Some(Subst::Linear(Var::U, [-1, -1, 0]))).unwrap();
    let e = t.entry2(1, 1, 1, 1);
    assert_eq!(e.coeff([1, 0, 0]).unwrap(), HbarPoly::from_int(-1));
    assert_eq!(e.coeff([0, 1, 0]).unwrap(), HbarPoly::from_int(-1));
    assert_eq!(e.coeff([0, 0, 0]).unwrap(), h().neg());
    let series = yangian_r(1, 2).unwrap();
    assert!(matches!(
        transpose_first(&series, Some(Subst::Invert(Var::U))),
        Err(RmatError::SubstitutionOutsideDomain(Var::U))
    ));
}

#[test]
fn ybe_small() {
    for n in 1..=2 {
        assert!(check_ybe(RKind::Yangian, n).unwrap());
        assert!(check_ybe(RKind::Quantum, n).unwrap());
    }
    assert_eq!(
        check_ybe(RKind::Yangian, 0),
        Err(RmatError::InvalidDimension(0))
    );
}

#[test]
fn ybe_detects_wrong_sign() {
    // swapped spectral arguments in one factor
    let r12 = quantum_r(2, Var::U, Var::V).unwrap().place(&[0, 1], 3);
    let r13 = quantum_r(2, Var::U, Var::W).unwrap().place(&[0, 2], 3);
    let r23 = quantum_r(2, Var::W, Var::V).unwrap().place(&[1, 2], 3);
    let lhs = LegMat::product(&[&r12, &r13, &r23]).unwrap();
    let rhs = LegMat::product(&[&r23, &r13, &r12]).unwrap();
    assert!(!lhs.sub(&rhs).unwrap().is_zero());
}

#[test]
fn unitarity() {
    assert!(check_unitarity(2).unwrap());
}

#[test]
fn rank_one_rtt_expansion() {
    let order = 4;
    let t = |v: Var| {
        series_matrix::<HbarPoly>(1, v, Direction::Inverse, order, |i, j, r| {
            NCPoly::gen(Gen::yang(i, j, r))
        })
    };
    let (t1, t2) = (t(Var::U).place(&[0], 2), t(Var::V).place(&[1], 2));
    let r = lift(&yangian_r_cleared(1, [1, -1, 0]).unwrap());
    let fam = expand_matrix_relation(
        "rtt",
        &[&r, &t1, &t2],
        &[&t2, &t1, &r],
        [(-3, 1), (-3, 1), (0, 0)],
    )
    .unwrap()
    .map(|p| substitute_constants(p, AlgebraTag::Yangian).unwrap());
    let g = |r: i32| NCPoly::<HbarPoly>::gen(Gen::yang(1, 1, r));
    let mut expect = RelationFamily::new("rtt");
    for m in 0..=3 {
        for n in 0..=3 {
            let p = g(m + 1)
                .commutator(&g(n))
                .sub(&g(m).commutator(&g(n + 1)))
                .sub(&g(m).commutator(&g(n)).scale(&h()));
            let p = substitute_constants(&p, AlgebraTag::Yangian).unwrap();
            expect.insert(RelKey::new(1, 1, 1, 1, [-m, -n, 0]), p);
        }
    }
    assert_eq!(fam.differences(&expect), vec![]);
    assert!(!fam.is_empty());
}

#[test]
fn expansion_beyond_window_is_rejected() {
    let t = series_matrix::<HbarPoly>(1, Var::U, Direction::Inverse, 2, |i, j, r| {
        NCPoly::gen(Gen::yang(i, j, r))
    });
    let t1 = t.place(&[0], 2);
    let r = lift(&yangian_r_cleared(1, [1, -1, 0]).unwrap());
    let err = expand_matrix_relation("x", &[&r, &t1], &[&t1, &r], [(-3, 0), (0, 0), (0, 0)]);
    assert!(matches!(err, Err(RmatError::TruncationInsufficient(_))));
}

#[test]
fn flipped_ybe_fails() {
    for kind in [RKind::Yangian, RKind::Quantum] {
        assert!(!check_ybe_with(kind, 2, true).unwrap());
    }
}

use super::*;
use crate::coeffring::{RatFun, Ring};
use crate::qloop::{trm_expand, TrmFamily};

#[test]
fn degrees() {
    let h = RatFun::q_minus_qinv();
    assert_eq!(
        filt_degree(&FilteredTerm::new(
            h,
            vec![Marker::t(1, 2, 0, 1), Marker::t(2, 1, 0, 2)]
        )),
        4
    );
    assert_eq!(
        filt_degree(&FilteredTerm::new(
            RatFun::one(),
            vec![Marker::t(1, 1, 3, 0)]
        )),
        0
    );
    assert_eq!(
        filt_degree(&FilteredTerm::new(RatFun::q_minus_one().pow(2), vec![])),
        2
    );
}

#[test]
fn phi_image_is_a_marker() {
    let e = phi_image(1, 2, 1);
    assert_eq!(e.degree(), 1);
    assert_eq!(
        e.expand(2).unwrap(),
        trm_expand(TrmFamily::T, 1, 2, 0, 1).unwrap()
    );
}

#[test]
fn first_auxiliary_congruence() {
    let engine = CongruenceEngine::new(Bounds::new(2));
    for (m, n) in [(0, 0), (1, 0), (0, 1)] {
        let c = RatFun::q_pow(1).sub(&RatFun::q_pow(-1));
        let mut e = FilteredExpr::new();
        e.push(
            c.clone(),
            vec![Marker::t(1, 2, 0, m), Marker::t(1, 1, 1, n)],
        );
        e.push(c.neg(), vec![Marker::t(1, 2, 0, m), Marker::t(1, 1, 0, n)]);
        let cert = congruence_check("aux", &e, (m + n + 2) as u32, &engine).unwrap();
        assert!(cert.verified);
        // the difference is already of high degree
        assert!(cert.relation_part.is_empty());
    }
}

#[test]
fn low_degree_targets_are_not_certified() {
    let engine = CongruenceEngine::new(Bounds::new(2));
    let e = phi_image(1, 2, 0);
    assert!(congruence_check("t", &e, 1, &engine).is_err());
    assert!(congruence_check("t", &e, 0, &engine).is_ok());
}

#[test]
fn graded_yangian_low() {
    let engine = CongruenceEngine::new(Bounds::new(2));
    for idx in crate::yangian::quads_pub(2) {
        let c = graded_yangian_check(&engine, idx, 0, 0).unwrap();
        assert!(c.verified);
    }
    for idx in [(1, 2, 2, 1), (1, 1, 1, 2)] {
        assert!(graded_yangian_check(&engine, idx, 1, 0).unwrap().verified);
        assert!(graded_yangian_check(&engine, idx, 0, 1).unwrap().verified);
    }
}

#[test]
fn flipped_graded_target_is_refuted() {
    let engine = CongruenceEngine::new(Bounds::new(2));
    let x = graded_yangian_target((1, 2, 2, 1), 1, 0, Flip::Sign)
        .expand(2)
        .unwrap();
    assert!(engine.certify("f", &x, 3).is_err());
    assert!(probe_refutation(&x, 2, 3).is_some());
    let c = congruence_outcome(&engine, "f", &x, 3);
    assert_eq!(c.status, crate::report::Status::Fail);
}

#[test]
fn symmetric_congruences_low_level() {
    use crate::freealg::Case;
    let engine = CongruenceEngine::new(Bounds::new(2));
    for case in [Case::O, Case::Sp] {
        for m in 0..=1 {
            for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                for r in 1..=2 {
                    assert!(
                        scong_check(&engine, case, i, j, r, m).is_ok(),
                        "{case:?} {i}{j} r={r} m={m}"
                    );
                }
                assert!(zeta_independence_check(&engine, case, i, j, m, 1, 2).is_ok());
                assert!(twisted_phi_check(&engine, case, i, j, m).is_ok());
            }
        }
    }
}

#[test]
fn flipped_symmetric_targets_fail() {
    use crate::freealg::Case;
    let engine = CongruenceEngine::new(Bounds::new(2));
    let x = scong_target(Case::O, 2, 1, 2, 1, 1, Flip::Sign).unwrap();
    assert_eq!(
        congruence_outcome(&engine, "s", &x, 2).status,
        crate::report::Status::Fail
    );
    let x = twisted_phi_target(Case::Sp, 2, 1, 2, 1, Flip::Sign).unwrap();
    assert_eq!(
        congruence_outcome(&engine, "p", &x, 2).status,
        crate::report::Status::Fail
    );
    // the diagonal entry is classically degenerate here, so the flip is invisible
    let x = twisted_phi_target(Case::Sp, 2, 1, 1, 1, Flip::Sign).unwrap();
    assert_eq!(
        congruence_outcome(&engine, "p", &x, 2).status,
        crate::report::Status::Pass
    );
}

#[test]
fn tbar_congruences() {
    for m in 0..=2 {
        for (i, j) in [(1, 1), (1, 2)] {
            assert!(tbar_congruence_check(i, j, m, Flip::None).unwrap());
        }
    }
    assert!(!tbar_congruence_check(1, 1, 1, Flip::Sign).unwrap());
}

#[test]
fn certificate_json() {
    let engine = CongruenceEngine::new(Bounds::new(2));
    let c = graded_yangian_check(&engine, (1, 2, 2, 1), 0, 0).unwrap();
    let v = serde_json::to_value(c.to_json()).unwrap();
    assert_eq!(v["target_id"], "graded[1221;0,0]");
    assert_eq!(v["threshold"], 2);
    assert_eq!(v["verified"], true);
}

#[test]
fn phi_image_is_the_undeformed_right_side() {
    use crate::coeffring::{rat, HbarPoly};
    use crate::freealg::{g_entry, Case};
    for case in [Case::O, Case::Sp] {
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for m in 0..=2 {
                let y = crate::yangian::embed_twisted_yangian_unordered(
                    case,
                    2,
                    i,
                    j,
                    m + 1,
                    &HbarPoly::hbar(),
                );
                let image = super::checks::push_phi(&y).unwrap();
                let g = |a, b| RatFun::from_rational(&rat(g_entry(case, a, b)));
                let rhs = super::checks::twisted_rhs(2, i, j, m, g).expand(2).unwrap();
                assert!(image.sub(&rhs).is_zero(), "{case:?} {i}{j} m={m}");
            }
        }
    }
}

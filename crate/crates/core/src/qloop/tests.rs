use super::*;
use crate::coeffring::Scalar;
use crate::coeffring::{rat, Rational};
use crate::freealg::Case;

fn quads(n: usize) -> Vec<(usize, usize, usize, usize)> {
    crate::yangian::quads_pub(n).collect()
}

#[test]
fn raw_components_match_matrix_expansion() {
    for kind in [QKind::TT, QKind::TbarTbar, QKind::TbarT] {
        let fam = expand_qloop_relation(kind, 2, 3).unwrap();
        for (key, p) in &fam.members {
            let idx = (
                key.i as usize,
                key.j as usize,
                key.k as usize,
                key.l as usize,
            );
            let mine = raw_component(kind, idx, key.exps[0], key.exps[1]);
            assert_eq!(&mine, p, "{kind:?} {key:?}");
        }
    }
}

#[test]
fn tt_component_is_displayed_family() {
    for idx in quads(2) {
        for r in -1..3 {
            for s in -1..3 {
                let (i, j, k, l) = idx;
                assert_eq!(
                    raw_component(QKind::TT, idx, -r, -s),
                    tt_display_component(i, j, k, l, r, s)
                );
            }
        }
    }
}

#[test]
fn excluded_symbols_never_appear() {
    for kind in [QKind::TT, QKind::TbarTbar, QKind::TbarT] {
        for (_, p) in relation_span(2, 2, &[kind]) {
            for g in p.generators() {
                let bad = g.level == 0
                    && ((g.family == Family::Tau && g.i < g.j)
                        || (g.family == Family::TauBar && g.i > g.j));
                assert!(!bad, "{g}");
            }
        }
    }
}

#[test]
fn single_index_relation() {
    let p = qloop_relation_component(QKind::TT, (1, 1, 1, 1), -1, -1);
    // T^(2)T^(1) terms cancel against their mirror: q^{-1}[T2,T1] - q[T1,T2]
    assert!(p.generators().iter().all(|g| g.i == 1 && g.j == 1));
}

#[test]
fn trm_examples() {
    let t = |f, i, j, r, m| trm_expand(f, i, j, r, m).unwrap();
    assert_eq!(t(TrmFamily::T, 2, 1, 0, 1), tau(2, 1, 1).sub(&tau(2, 1, 0)));
    assert_eq!(
        t(TrmFamily::T, 1, 2, 0, 1),
        tau(1, 2, 1).add(&taubar(1, 2, 0))
    );
    let mut want = tau(1, 1, 2);
    want.add_scaled(&tau(1, 1, 1), &RatFun::from_int(-2));
    want = want.add(&tau(1, 1, 0));
    assert_eq!(t(TrmFamily::T, 1, 1, 0, 2), want);
    assert!(trm_expand(TrmFamily::TTilde, 1, 1, 2, 1).is_err());
}

#[test]
fn trm_telescopes() {
    for f in [TrmFamily::T, TrmFamily::TBar] {
        for (i, j) in [(1, 1), (1, 2), (2, 1)] {
            for r in 0..3 {
                for m in 0..3 {
                    let lhs = trm_expand(f, i, j, r + 1, m)
                        .unwrap()
                        .sub(&trm_expand(f, i, j, r, m).unwrap());
                    assert_eq!(lhs, trm_expand(f, i, j, r, m + 1).unwrap());
                }
            }
        }
    }
    // T̃ recursion against both boundary rules
    for m in 0..4 {
        for r in 1..=m {
            let lhs = trm_expand(TrmFamily::TTilde, 2, 1, r, m + 1).unwrap();
            let rhs = trm_expand(TrmFamily::TTilde, 2, 1, r - 1, m)
                .unwrap()
                .sub(&trm_expand(TrmFamily::TTilde, 2, 1, r, m).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn rs_identity_certified() {
    for idx in quads(2) {
        check_rs_identity(idx, (1, 0), (1, 0)).unwrap();
        check_rs_identity(idx, (1, 1), (1, 0)).unwrap();
    }
}

#[test]
fn rs_identity_base_case_is_rescaled_component() {
    for idx in quads(2) {
        let lhs = rs_identity(idx, (1, 0), (1, 0)).unwrap();
        let rel = qloop_relation_component(QKind::TT, idx, -1, -1);
        assert_eq!(lhs, rel, "{idx:?}");
    }
}

#[test]
fn twisted_level_zero() {
    let rels = twisted_qloop_relations(Case::O, 2, 1, false).unwrap();
    assert!(rels
        .iter()
        .any(|(k, p)| k == "S12(0)=0" && *p == s_gen(1, 2, 0)));
    let rels = twisted_qloop_relations(Case::Sp, 2, 1, false).unwrap();
    assert!(rels.iter().any(|(k, _)| k == "det1"));
    assert_eq!(
        embed_twisted_qloop(Case::O, 2, 1, 2, 0).unwrap(),
        QLoopElem::zero()
    );
    assert!(embed_twisted_qloop(Case::Sp, 3, 1, 1, 0).is_err());
}

#[test]
fn srm_recursion() {
    for case in [Case::O, Case::Sp] {
        let a = srm_expand(case, 2, 2, 1, 1, 1).unwrap();
        let b = srm_expand(case, 2, 2, 1, 2, 0)
            .unwrap()
            .sub(&srm_expand(case, 2, 2, 1, 1, 0).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn lemma_holds_freely() {
    for case in [Case::O, Case::Sp] {
        for i in 1..=2 {
            for j in 1..=2 {
                for r in 1..=2 {
                    for m in 0..=2 {
                        let out = check_lemma_srm(case, 2, i, j, r, m).unwrap();
                        assert_eq!(out, LemmaOutcome::Free, "{case:?} {i}{j} r={r} m={m}");
                    }
                }
            }
        }
    }
}

#[test]
fn evaluation_self_certifies() {
    EvalRep::evaluation(2, &rat(3))
        .unwrap()
        .self_certify(3)
        .unwrap();
    let two = EvalRep::at_points(2, &[rat(2), Rational::new(5.into(), 3.into())]).unwrap();
    two.self_certify(3).unwrap();
}

#[test]
fn twisted_images_pass_in_representation() {
    for case in [Case::O, Case::Sp] {
        let rels = twisted_qloop_relations(case, 2, 2, false).unwrap();
        let rep = rep_check(2, &rels, &[rat(2), rat(-3)], 3, Some(case)).unwrap();
        assert!(rep.passed(), "{case:?}: {:?}", rep.first_failure());
    }
}

#[test]
fn perturbed_relation_fails_in_representation() {
    let mut rels = twisted_qloop_relations(Case::O, 2, 1, false).unwrap();
    let (_, p) = rels.iter_mut().find(|(k, _)| k == "S11(0)=1").unwrap();
    *p = p.add(&QLoopElem::one());
    let rep = rep_check(2, &rels, &[rat(2), rat(-3)], 2, Some(Case::O)).unwrap();
    assert!(!rep.passed());
}

#[test]
fn twisted_policy_reports_method() {
    for case in [Case::O, Case::Sp] {
        let rep = verify_twisted_images(case, 2, 2, &[rat(2), rat(-3)]).unwrap();
        assert!(rep.passed(), "{case:?}: {:?}", rep.first_failure());
        if case == Case::O {
            assert!(rep.checks.iter().any(|c| c.detail == "span"));
        }
    }
}

#[test]
fn tt_expansion_is_displayed_family() {
    let fam = expand_qloop_relation(QKind::TT, 2, 3).unwrap();
    assert_eq!(fam.differences(&tt_display_family(2, 3)), vec![]);
}

use super::*;
use crate::coeffring::{HbarPoly, Ring, Scalar};
use crate::freealg::{Case, Gen};

fn h() -> HbarPoly {
    HbarPoly::hbar()
}

#[test]
fn relation_trivial_and_low_level() {
    assert!(yangian_relation(1, 1, 1, 1, 0, 0).is_zero());
    // m = 0, n = 1 gives [t_ij^(1), t_kl^(1)] - ħ(δ_kj t_il^(1) - δ_il t_kj^(1))
    for (i, j, k, l) in quads(2) {
        let expect = t(i, j, 1)
            .commutator(&t(k, l, 1))
            .sub(&commutator_rule(i, j, 1, k, l, 1));
        assert_eq!(yangian_relation(i, j, k, l, 0, 1), expect);
    }
}

#[test]
fn rank_one_is_commutative() {
    for total in 1..=5 {
        for r in 1..total {
            let c = t(1, 1, r).commutator(&t(1, 1, total - r));
            assert!(certify_in_relations(1, &c, total).is_ok(), "level {total}");
        }
    }
}

#[test]
fn rule_examples() {
    let got = commutator_rule(1, 2, 1, 2, 1, 1);
    let expect = t(1, 1, 1).sub(&t(2, 2, 1)).scale(&h());
    assert_eq!(got, expect);
    assert_eq!(
        normalize(&commutator_rule(1, 1, 2, 1, 1, 1)),
        YangianElem::zero()
    );
    for (i, j, k, l) in quads(2) {
        let a = commutator_rule(i, j, 2, k, l, 2);
        assert!(normalize(&a.add(&commutator_rule(k, l, 2, i, j, 2))).is_zero());
    }
}

#[test]
fn rule_certified_low_levels() {
    for (i, j, k, l) in quads(2) {
        for (r, s) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)] {
            let c = certify_commutator_rule(2, (i, j, r), (k, l, s));
            assert!(c.is_ok(), "({i}{j}{r},{k}{l}{s})");
        }
    }
}

#[test]
fn wrong_rule_is_refuted() {
    let target = t(1, 2, 1)
        .commutator(&t(2, 1, 1))
        .sub(&commutator_rule(1, 2, 1, 2, 1, 1).neg());
    assert!(certify_in_relations(2, &target, 2).is_err());
}

#[test]
fn normalize_examples() {
    let w = t(1, 1, 2).mul(&t(1, 1, 1));
    assert_eq!(normalize(&w), t(1, 1, 1).mul(&t(1, 1, 2)));
    let w = t(2, 1, 1).mul(&t(1, 2, 1));
    let expect = t(1, 2, 1)
        .mul(&t(2, 1, 1))
        .add(&t(2, 2, 1).sub(&t(1, 1, 1)).scale(&h()));
    assert_eq!(normalize(&w), expect);
    let ordered = t(1, 1, 1).mul(&t(2, 1, 1)).mul(&t(1, 2, 2));
    assert_eq!(normalize(&ordered), ordered);
    assert!(is_normal(&normalize(
        &t(2, 2, 3).mul(&t(1, 2, 1)).mul(&t(2, 1, 2))
    )));
}

#[test]
fn normalize_strategies_agree() {
    let gens = [t(2, 1, 2), t(1, 2, 1), t(2, 2, 1), t(1, 1, 3)];
    for a in &gens {
        for b in &gens {
            for c in &gens {
                let p = a.mul(b).mul(c);
                assert_eq!(
                    normalize_with(&p, Strategy::Leftmost),
                    normalize_with(&p, Strategy::Rightmost)
                );
            }
        }
    }
}

#[test]
fn symmetry_closed_form_matches_series() {
    for case in [Case::O, Case::Sp] {
        let fam = twisted_symmetry_series(case, 2, 5).unwrap();
        for r in 0..=5 {
            for ((i, j), p) in twisted_symmetry_components(case, 2, r) {
                let key = crate::rmat::RelKey::new(i, j, 0, 0, [-r, 0, 0]);
                let got = fam
                    .members
                    .get(&key)
                    .cloned()
                    .unwrap_or_else(YangianElem::zero);
                let p = crate::freealg::substitute_constants(
                    &p,
                    crate::freealg::AlgebraTag::TwistedYangian(case),
                );
                assert_eq!(got, p.unwrap(), "{case:?} {i}{j} r={r}");
            }
        }
    }
}

#[test]
fn symmetry_low_examples() {
    let comps = twisted_symmetry_components(Case::O, 2, 1);
    let (_, p) = comps.iter().find(|(ij, _)| *ij == (1, 2)).unwrap();
    let s12 = YangianElem::gen(Gen::new(crate::freealg::Family::TwS, 1, 2, 1));
    let s21 = YangianElem::gen(Gen::new(crate::freealg::Family::TwS, 2, 1, 1));
    assert_eq!(*p, s21.add(&s12).neg());
    for case in [Case::O, Case::Sp] {
        for (_, p) in twisted_symmetry_components(case, 2, 0) {
            assert!(p.is_zero());
        }
    }
}

#[test]
fn embedding_examples() {
    let e = embed_twisted_yangian(Case::O, 2, 1, 2, 1);
    assert_eq!(e, t(1, 2, 1).sub(&t(2, 1, 1)));
    let e = embed_twisted_yangian(Case::O, 2, 1, 2, 2);
    let quad = t(1, 1, 1)
        .mul(&t(2, 1, 1))
        .add(&t(1, 2, 1).mul(&t(2, 2, 1)));
    let expect = normalize(&t(1, 2, 2).add(&t(2, 1, 2)).sub(&quad));
    assert_eq!(e, expect);
    assert_eq!(
        embed_twisted_yangian(Case::Sp, 2, 2, 1, 0),
        YangianElem::constant(HbarPoly::from_int(-1))
    );
}

#[test]
fn embedding_passes_low_caps() {
    for case in [Case::O, Case::Sp] {
        let rep = verify_twisted_embedding(
            case,
            2,
            TwistedCaps {
                sym_rmax: 3,
                quat_rmax: 3,
            },
        )
        .unwrap();
        assert!(rep.passed(), "{:?}", rep.first_failure());
        // levels 1..=3 on each side: exponents -1..=1
        assert!(rep.checks.iter().any(|c| c.name.contains("u^-1v^-1")));
    }
    assert_eq!(
        verify_twisted_embedding(
            Case::Sp,
            3,
            TwistedCaps {
                sym_rmax: 1,
                quat_rmax: 1
            }
        )
        .unwrap_err(),
        EmbedError::SymplecticOddN(3)
    );
}

#[test]
fn extra_hbar_on_quadratic_part_breaks_symmetry() {
    let caps = TwistedCaps {
        sym_rmax: 2,
        quat_rmax: 0,
    };
    let rep = verify_twisted_embedding_with(Case::O, 2, caps, |i, j, r| {
        embed_twisted_yangian_scaled(Case::O, 2, i, j, r, &h())
    })
    .unwrap();
    assert!(!rep.passed());
}

#[test]
fn flipped_sign_image_fails() {
    let caps = TwistedCaps {
        sym_rmax: 2,
        quat_rmax: 2,
    };
    let rep = verify_twisted_embedding_with(Case::O, 2, caps, |i, j, r| {
        let e = embed_twisted_yangian(Case::O, 2, i, j, r);
        if (i, j, r) == (1, 2, 1) {
            e.add(&t(2, 1, 1).scale(&HbarPoly::from_int(2)))
        } else {
            e
        }
    })
    .unwrap();
    assert!(!rep.passed());
}

#[test]
fn rtt_expansion_is_displayed_family() {
    for n in 1..=2 {
        let fam = expand_yangian_relation(n, 3).unwrap();
        assert_eq!(fam.differences(&yangian_relation_family(n, 3)), vec![]);
    }
}

use proptest::prelude::*;

use super::*;
use crate::coeffring::{rat, RatFun, Rational, Ring};

type P = NCPoly<Rational>;

fn x(k: usize) -> P {
    P::gen(Gen::sym(k))
}

#[test]
fn product_of_noncommuting_binomials() {
    let (a, b) = (x(1), x(2));
    let lhs = a.add(&b).mul(&a.sub(&b));
    let expect = a.mul(&a).sub(&a.mul(&b)).add(&b.mul(&a)).sub(&b.mul(&b));
    assert_eq!(lhs, expect);
    assert_eq!(lhs.len(), 4);
    assert_eq!(P::one().mul(&a), a);
}

#[test]
fn q_factors_cancel() {
    let t11 = NCPoly::<RatFun>::gen(Gen::new(Family::T, 1, 1, 1));
    let t22 = NCPoly::<RatFun>::gen(Gen::new(Family::T, 2, 2, 1));
    let lhs = t11.scale(&RatFun::q()).mul(&t22.scale(&RatFun::q_pow(-1)));
    assert_eq!(lhs, t11.mul(&t22));
}

#[test]
fn commutator_and_leibniz() {
    let (a, b, c) = (x(1), x(2), x(3));
    assert!(a.commutator(&a).is_zero());
    assert_eq!(a.commutator(&b), a.mul(&b).sub(&b.mul(&a)));
    let lhs = a.commutator(&b.mul(&c));
    let rhs = a.commutator(&b).mul(&c).add(&b.mul(&a.commutator(&c)));
    assert!(lhs.sub(&rhs).is_zero());
}

#[test]
fn canonical_order_is_length_then_lex() {
    let short = Word(vec![Gen::yang(2, 2, 5)]);
    let long = Word(vec![Gen::yang(1, 1, 1), Gen::yang(1, 1, 1)]);
    assert!(short < long);
    assert!(Word(vec![Gen::yang(1, 2, 1)]) < Word(vec![Gen::yang(1, 1, 2)]));
    assert!(Word(vec![Gen::yang(2, 1, 1)]) < Word(vec![Gen::yang(2, 2, 1)]));
}

#[test]
fn constants_yangian() {
    let p = P::monomial(rat(1), &[Gen::yang(1, 2, 0), Gen::yang(2, 1, 1)]);
    assert!(substitute_constants(&p, AlgebraTag::Yangian)
        .unwrap()
        .is_zero());
    let d = P::monomial(rat(3), &[Gen::yang(2, 2, 0), Gen::yang(2, 1, 1)]);
    assert_eq!(
        substitute_constants(&d, AlgebraTag::Yangian).unwrap(),
        P::monomial(rat(3), &[Gen::yang(2, 1, 1)])
    );
}

#[test]
fn constants_quantum_loop() {
    type Q = NCPoly<RatFun>;
    let t11 = Q::gen(Gen::new(Family::T, 1, 1, 0));
    let got = substitute_constants(&t11, AlgebraTag::QuantumLoop).unwrap();
    let mut expect = Q::one();
    expect.add_scaled(&Q::gen(Gen::tau(1, 1, 0)), &RatFun::q_minus_one());
    assert_eq!(got, expect);
    let t12 = Q::gen(Gen::new(Family::T, 1, 2, 0));
    assert!(substitute_constants(&t12, AlgebraTag::QuantumLoop)
        .unwrap()
        .is_zero());
    let tb21 = Q::gen(Gen::new(Family::TBar, 2, 1, 0));
    assert!(substitute_constants(&tb21, AlgebraTag::QuantumLoop)
        .unwrap()
        .is_zero());
    let t21 = Q::gen(Gen::new(Family::T, 2, 1, 0));
    assert_eq!(
        substitute_constants(&t21, AlgebraTag::QuantumLoop).unwrap(),
        t21
    );
    assert_eq!(
        substitute_constants(
            &P::gen(Gen::new(Family::T, 1, 1, 0)),
            AlgebraTag::QuantumLoop
        ),
        Err(FreeAlgError::NoQParameter)
    );
    assert!("bogus".parse::<AlgebraTag>().is_err());
}

#[test]
fn constants_twisted() {
    let s = P::gen(Gen::new(Family::TwS, 1, 2, 0));
    let got = substitute_constants(&s, AlgebraTag::TwistedYangian(Case::Sp)).unwrap();
    assert_eq!(got, P::one());
    let s21 = P::gen(Gen::new(Family::TwS, 2, 1, 0));
    let got = substitute_constants(&s21, AlgebraTag::TwistedYangian(Case::Sp)).unwrap();
    assert_eq!(got, P::constant(rat(-1)));
}

#[test]
fn span_trivial_cases() {
    let rels = vec![
        ("R1".to_string(), x(1).mul(&x(2)).sub(&x(2).mul(&x(1)))),
        ("R2".to_string(), x(1).mul(&x(1)).add(&x(2))),
    ];
    let c = span_membership(&rels[0].1, &rels).unwrap();
    assert_eq!(c.relations, vec![("R1".to_string(), rat(1))]);
    assert!(span_membership(&P::zero(), &rels).unwrap().is_empty());
    let target = rels[0].1.scale(&rat(2)).sub(&rels[1].1.scale(&rat(5)));
    let c = span_membership(&target, &rels).unwrap();
    assert_eq!(expand(&c, &rels).unwrap(), target);
    match span_membership(&x(3), &rels) {
        Err(MembershipError::NotInSpan { residual }) => assert_eq!(residual, x(3)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn ideal_search_finds_right_multiple() {
    let r = x(1).mul(&x(2)).sub(&x(2).mul(&x(1)));
    let rels = vec![("R1".to_string(), r.clone())];
    let target = r.mul(&x(2));
    assert!(span_membership(&target, &rels).is_err());
    let c = ideal_membership_bounded(&target, &rels, 1).unwrap();
    assert_eq!(c.relations.len(), 1);
    assert_eq!(c.relations[0].1, rat(1));
    assert!(matches!(
        ideal_membership_bounded(&x(3).mul(&x(3)).mul(&x(3)), &rels, 1),
        Err(MembershipError::Inconclusive { .. })
    ));
}

fn arb_poly() -> impl Strategy<Value = P> {
    prop::collection::vec((prop::collection::vec(1usize..4, 0..3), -3i64..4), 0..5).prop_map(|ts| {
        P::from_terms(
            ts.into_iter()
                .map(|(w, c)| (Word(w.into_iter().map(Gen::sym).collect()), rat(c))),
        )
    })
}

proptest! {
    #[test]
    fn mul_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_distributive(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn span_verdict_independent_of_order(a in arb_poly(), b in arb_poly(), c in arb_poly(), k in -2i64..3) {
        let target = a.scale(&rat(k)).add(&c);
        let fwd = vec![("a".to_string(), a.clone()), ("b".to_string(), b.clone()), ("c".to_string(), c.clone())];
        let mut rev = fwd.clone();
        rev.reverse();
        prop_assert!(span_membership(&target, &fwd).is_ok());
        prop_assert!(span_membership(&target, &rev).is_ok());
        let other = b.add(&P::gen(Gen::sym(9)));
        prop_assert_eq!(span_membership(&other, &fwd).is_ok(), span_membership(&other, &rev).is_ok());
    }
}

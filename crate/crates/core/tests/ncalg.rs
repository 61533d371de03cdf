use std::collections::BTreeMap;

use proptest::prelude::*;

use prg_core::cogroupoid::build_presentation;
use prg_core::forms::MLForm;
use prg_core::linalg::{int, Matrix};
use prg_core::ncalg::{
    cancel_inverse_pairs, ideal_membership, parse_poly, GenMorphism, GenSymbol, Membership, NCPoly, Presentation, Word,
    ZhangTwist,
};

fn symbol() -> impl Strategy<Value = GenSymbol> {
    prop_oneof![
        (0usize..3, 0usize..3).prop_map(|(i, j)| GenSymbol::a(i, j)),
        (0usize..3, 0usize..3).prop_map(|(i, j)| GenSymbol::b(i, j)),
        Just(GenSymbol::d()),
        Just(GenSymbol::d_inv()),
    ]
}

fn poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(symbol(), 0..4)), 0..5)
        .prop_map(|terms| NCPoly::from_terms(terms.into_iter().map(|(c, w)| (Word::from_symbols(w), int(c)))))
}

fn antisym_h() -> Presentation {
    let e = MLForm::from_matrix(&Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
    build_presentation(&e, &e).unwrap().presentation().clone()
}

proptest! {
    #[test]
    fn display_parses_back(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn multiplication_is_associative(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn cancelled_pairs_re_expand(p in poly()) {
        let h = antisym_h();
        let (reduced, witness) = cancel_inverse_pairs(&p, h.relations());
        prop_assert!(witness.verifies(&(&p - &reduced), h.relations()));
    }
}

#[test]
fn lemma_identity_is_a_member() {
    let h = antisym_h();
    let target = parse_poly("b[1,1].a[1,1] + b[1,2].a[2,1] - 1").unwrap();
    match ideal_membership(&target, &h, 8, &[]).unwrap() {
        Membership::Member { witness, bound } => {
            assert!(witness.verifies(&target, h.relations()));
            assert!(bound <= 8);
        }
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn degree_obstruction_is_never_decided() {
    let h = antisym_h();
    let ab = h.relations()[h.relations().len() - 4..].to_vec();
    let only_ab = Presentation::new(h.alphabet().to_vec(), h.grading().clone(), ab).unwrap();
    let target = NCPoly::symbol(GenSymbol::a(0, 0));
    for bound in 1..=4 {
        assert!(matches!(ideal_membership(&target, &only_ab, bound, &[]).unwrap(), Membership::Unknown { .. }));
    }
}

#[test]
fn free_algebra_elements_are_refuted() {
    let alphabet = vec![GenSymbol::x(0)];
    let grading: BTreeMap<_, _> = alphabet.iter().map(|s| (*s, 1)).collect();
    let free = Presentation::new(alphabet, grading, vec![]).unwrap();
    let target = NCPoly::symbol(GenSymbol::x(0));
    assert!(matches!(ideal_membership(&target, &free, 3, &[]).unwrap(), Membership::Refuted { .. }));
}

#[test]
fn inhomogeneous_relation_is_rejected() {
    let alphabet = vec![GenSymbol::x(0)];
    let grading: BTreeMap<_, _> = alphabet.iter().map(|s| (*s, 1)).collect();
    let r = parse_poly("x[1].x[1] - x[1]").unwrap();
    assert!(Presentation::new(alphabet, grading, vec![r]).is_err());
}

#[test]
fn zhang_twist_by_scaling() {
    let alphabet = vec![GenSymbol::x(0), GenSymbol::x(1)];
    let grading: BTreeMap<_, _> = alphabet.iter().map(|s| (*s, 1)).collect();
    let free = Presentation::new(alphabet, grading, vec![]).unwrap();
    let images = [(GenSymbol::x(0), parse_poly("2 x[1]").unwrap()), (GenSymbol::x(1), parse_poly("x[2]").unwrap())];
    let psi = GenMorphism::new(free.clone(), free, images.into_iter().collect()).unwrap();
    let twist = ZhangTwist::new(psi).unwrap();
    // x2 ∘ x1 = x2 · ψ(x1) = 2 x2 x1
    let x1 = parse_poly("x[1]").unwrap();
    let x2 = parse_poly("x[2]").unwrap();
    assert_eq!(twist.multiply(&x2, &x1).unwrap(), parse_poly("2 x[2].x[1]").unwrap());
    assert_eq!(twist.power_apply(-1, &twist.power_apply(1, &x1).unwrap()).unwrap(), x1);
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prg_core::forms::{
    aut_membership, check_preregular, dual_form, find_cyclic_twist, form_to_superpotential, is_cyclic_twist,
    is_dual_form, superpotential_to_form, twist_form, MLForm,
};
use prg_core::linalg::{frac, int, Matrix};
use prg_core::random::{random_invertible, random_preregular};

fn small_matrix() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, 4).prop_map(|v| Matrix::from_i64(&[&v[..2], &v[2..]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invertible_gram_matrices_are_preregular(e in small_matrix()) {
        prop_assume!(e.is_invertible());
        let f = MLForm::from_matrix(&e).unwrap();
        prop_assert!(check_preregular(&f).passes());
        let psi = find_cyclic_twist(&f).unwrap().unwrap();
        prop_assert_eq!(&psi, &e.transpose().inverse().unwrap().mul(&e).unwrap());
        prop_assert!(is_cyclic_twist(&f, &psi));
    }

    #[test]
    fn dual_forms_contract_to_identity(e in small_matrix()) {
        prop_assume!(e.is_invertible());
        let f = MLForm::from_matrix(&e).unwrap();
        prop_assert!(is_dual_form(&f, &dual_form(&f).unwrap()));
    }

    #[test]
    fn superpotential_round_trip(seed in any::<u64>(), m in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_preregular(m, 2, &mut rng).unwrap();
        let (s, psi) = form_to_superpotential(&f).unwrap();
        let (back, _) = superpotential_to_form(&s, &psi).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn every_invertible_map_scales_an_antisymmetric_form_by_its_determinant() {
    let e = MLForm::from_matrix(&Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let phi = random_invertible(2, 4, &mut rng);
        let aut = aut_membership(&e, &phi).unwrap();
        assert!(aut.member);
        assert_eq!(aut.lambda, Some(phi.det().unwrap()));
    }
}

#[test]
fn non_automorphism_is_rejected() {
    let e = MLForm::from_matrix(&Matrix::from_i64(&[&[1, 0], &[0, 1]])).unwrap();
    let phi = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
    assert!(!aut_membership(&e, &phi).unwrap().member);
}

#[test]
fn twisted_forms_stay_preregular() {
    let e = MLForm::from_matrix(&Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
    let phi = Matrix::diag(&[int(2), int(3)]);
    let t = twist_form(&e, &phi).unwrap();
    assert!(check_preregular(&t).passes());
    assert_eq!(
        t.matrix().unwrap(),
        Matrix::from_i64(&[&[0, 1], &[-1, 0]]).mul(&Matrix::diag(&[frac(1, 2), frac(1, 3)])).unwrap()
    );
}

#[test]
fn singular_gram_matrix_is_not_preregular() {
    let f = MLForm::from_matrix(&Matrix::from_i64(&[&[1, 2], &[2, 4]])).unwrap();
    assert!(!check_preregular(&f).passes());
}

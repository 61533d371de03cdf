use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prg_core::cogroupoid::{
    build_delta, build_presentation, build_twisting_pair, verify_antipode, verify_cocategory,
    verify_cocycle_connectivity, verify_lemma_identities, AntipodeVariant,
};
use prg_core::error::Error;
use prg_core::forms::MLForm;
use prg_core::linalg::{frac, int, Matrix};
use prg_core::ncalg::GenSymbol;
use prg_core::random::random_preregular;
use prg_core::Verdict;

fn gram(rows: &[&[i64]]) -> MLForm {
    MLForm::from_matrix(&Matrix::from_i64(rows)).unwrap()
}

#[test]
fn relation_counts_follow_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (m, k, l) in [(2, 1, 3), (2, 3, 2), (3, 2, 1)] {
        let e = random_preregular(m, k, &mut rng).unwrap();
        let f = random_preregular(m, l, &mut rng).unwrap();
        let h = build_presentation(&e, &f).unwrap();
        assert_eq!(h.relations().len(), l.pow(m as u32) + k.pow(m as u32) + 2 + k * k);
        assert_eq!(h.generators().len(), 2 * k * l + 2);
    }
}

#[test]
fn mismatched_arities_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let e = random_preregular(2, 2, &mut rng).unwrap();
    let f = random_preregular(3, 2, &mut rng).unwrap();
    assert!(matches!(build_presentation(&e, &f), Err(Error::DimensionMismatch(_))));
}

#[test]
fn coproduct_is_matrix_multiplication() {
    let e = gram(&[&[0, 1], &[-1, 0]]);
    let delta = build_delta(&e, &e, &e).unwrap();
    let img = delta.image(&GenSymbol::a(0, 1)).unwrap();
    assert_eq!(img.len(), 2);
    assert_eq!(delta.image(&GenSymbol::d()).unwrap().len(), 1);
}

#[test]
fn cocategory_with_a_bound_checks_relations() {
    let e = gram(&[&[0, 1], &[-1, 0]]);
    let f = gram(&[&[0, 1], &[-2, 0]]);
    let report = verify_cocategory(&e, &f, &e, &f, Some(6)).unwrap();
    assert_eq!(report.verdict(), Verdict::Verified);
    assert!(report.checks.iter().any(|c| c.name.starts_with("delta")));
}

#[test]
fn lemma_variant_handles_distinct_forms() {
    let e = gram(&[&[0, 1], &[-1, 0]]);
    let f = gram(&[&[1, 2], &[0, 1]]);
    let report = verify_antipode(&e, &f, 8).unwrap();
    assert_eq!(report.passing(), Some(AntipodeVariant::Lemma));
    let lemma = verify_lemma_identities(&e, &f, 8, &[]).unwrap();
    assert_eq!(lemma.verdict(), Verdict::Verified);
}

#[test]
fn tiny_bound_is_inconclusive() {
    let e = gram(&[&[0, 1], &[-1, 0]]);
    let report = verify_antipode(&e, &e, 2).unwrap();
    assert_eq!(report.verdict(), Verdict::Inconclusive);
}

#[test]
fn twisting_pair_needs_an_automorphism() {
    let e = gram(&[&[1, 0], &[0, 1]]);
    let phi = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
    assert!(matches!(build_twisting_pair(&e, &phi, 6), Err(Error::NotAutomorphism(_))));
}

#[test]
fn twisting_pair_uses_the_mirrored_convention() {
    let e = gram(&[&[0, 1], &[-1, 0]]);
    let phi = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
    let r = build_twisting_pair(&e, &phi, 8).unwrap();
    assert_eq!(r.lambda, int(-2));
    assert_eq!(r.p1_convention(), Some("mirrored"));
    assert_eq!(r.verdict(), Verdict::Verified);
}

#[test]
fn connectivity_for_a_non_diagonal_automorphism() {
    let e = gram(&[&[0, 1], &[-1, 0]]);
    let phi = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
    let r = verify_cocycle_connectivity(&e, &phi, 8).unwrap();
    assert_eq!(r.verdict(), Verdict::Verified);
    let diag = Matrix::diag(&[int(2), frac(1, 2)]);
    assert_eq!(verify_cocycle_connectivity(&e, &diag, 8).unwrap().lambda, int(1));
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prg_core::cogroupoid::{build_presentation, verify_lemma_identities};
use prg_core::error::Error;
use prg_core::forms::MLForm;
use prg_core::io::{certificate_from_json, certificate_to_json};
use prg_core::linalg::{int, Matrix};
use prg_core::ncalg::parse_poly;
use prg_core::random::{random_invertible, random_preregular};
use prg_core::representations::{extend_module, nonvanishing_certificate, verify_module, DEFAULT_WINDOW};
use prg_core::Verdict;

fn matrices(seed: u64) -> (Matrix, Matrix, Matrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_invertible(2, 3, &mut rng), random_invertible(2, 3, &mut rng), random_invertible(2, 2, &mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn extended_families_satisfy_the_identities(seed in any::<u64>(), lo in -4i64..=0, hi in 1i64..=4) {
        let (e, f, s) = matrices(seed);
        let fam = extend_module(&e, &f, &s, (lo, hi)).unwrap();
        prop_assert!(verify_module(&fam).passes());
        prop_assert_eq!(fam.a(0).unwrap(), &s);
    }

    #[test]
    fn relations_act_by_zero(seed in any::<u64>()) {
        let (e, f, s) = matrices(seed);
        let fam = extend_module(&e, &f, &s, DEFAULT_WINDOW).unwrap();
        let h = build_presentation(&MLForm::from_matrix(&e).unwrap(), &MLForm::from_matrix(&f).unwrap()).unwrap();
        for r in h.relations() {
            if let Ok(v) = fam.evaluate_scalar(r, 0) {
                prop_assert_eq!(v, int(0));
            }
        }
    }
}

#[test]
fn window_must_contain_the_seed() {
    let (e, f, s) = matrices(1);
    assert!(matches!(extend_module(&e, &f, &s, (1, 3)), Err(Error::OutOfRange(_))));
}

#[test]
fn singular_seed_is_rejected() {
    let (e, f, _) = matrices(2);
    let s = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
    assert!(matches!(extend_module(&e, &f, &s, DEFAULT_WINDOW), Err(Error::Singular)));
}

#[test]
fn leaving_the_window_is_reported() {
    let (e, f, s) = matrices(3);
    let fam = extend_module(&e, &f, &s, (-1, 1)).unwrap();
    let p = parse_poly("a[1,1].a[1,1].a[1,1]").unwrap();
    assert!(matches!(fam.evaluate(&p, 0), Err(Error::OutOfWindow(_))));
}

#[test]
fn tampered_family_is_detected() {
    let (e, f, s) = matrices(4);
    let fam = extend_module(&e, &f, &s, DEFAULT_WINDOW).unwrap();
    let bad = fam.with_a(2, Matrix::identity(2));
    assert!(!verify_module(&bad).passes());
}

#[test]
fn family_falsifies_a_wrong_identity() {
    let e = MLForm::from_matrix(&Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
    let seed = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
    let fam = extend_module(&e.matrix().unwrap(), &e.matrix().unwrap(), &seed, DEFAULT_WINDOW).unwrap();
    let report = verify_lemma_identities(&e, &e, 6, &[&fam]).unwrap();
    assert_eq!(report.verdict(), Verdict::Verified);
    let wrong = parse_poly("a[1,1].b[1,1] - 1").unwrap();
    assert_ne!(fam.evaluate_scalar(&wrong, 0).unwrap(), int(0));
}

#[test]
fn certificates_round_trip_and_detect_tampering() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let e = random_preregular(2, 2, &mut rng).unwrap();
    let f = random_preregular(2, 2, &mut rng).unwrap();
    let cert = nonvanishing_certificate(&e, &f, None, 99).unwrap();
    cert.verify().unwrap();
    let back = certificate_from_json(&certificate_to_json(&cert)).unwrap();
    assert_eq!(back, cert);

    let mut tampered = cert.clone();
    tampered.checks[0].push('!');
    assert!(tampered.verify().is_err());
    let mut reseeded = cert.clone();
    reseeded.rng_seed = Some(100);
    assert!(reseeded.verify().is_err());
}

#[test]
fn certificates_need_matching_bilinear_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let e = random_preregular(2, 2, &mut rng).unwrap();
    let f = random_preregular(2, 3, &mut rng).unwrap();
    assert!(matches!(nonvanishing_certificate(&e, &f, None, 1), Err(Error::DimensionMismatch(_))));
    let c = random_preregular(3, 2, &mut rng).unwrap();
    assert!(matches!(nonvanishing_certificate(&c, &c, None, 1), Err(Error::Unsupported(_))));
}

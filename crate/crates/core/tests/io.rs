use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prg_core::cogroupoid::build_presentation;
use prg_core::error::Error;
use prg_core::io::{
    form_from_json, form_to_json, matrix_from_json, matrix_to_json, parse_json, presentation_from_json,
    presentation_to_json, tensor_from_json, tensor_to_json,
};
use prg_core::linalg::{Matrix, Scalar};
use prg_core::random::random_preregular;

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=9).prop_map(|(p, q)| Scalar::new(p.into(), q.into()))
}

proptest! {
    #[test]
    fn matrices_round_trip(rows in 1usize..=3, cols in 1usize..=3, vals in prop::collection::vec(rational(), 9)) {
        let m = Matrix::from_fn(rows, cols, |i, j| vals[i * cols + j].clone());
        let text = matrix_to_json(&m).to_string();
        prop_assert_eq!(matrix_from_json(&parse_json(&text).unwrap()).unwrap(), m);
    }

    #[test]
    fn forms_round_trip(seed in any::<u64>(), m in 2usize..=3, n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_preregular(m, n, &mut rng).unwrap();
        let text = form_to_json(&f).to_string();
        prop_assert_eq!(form_from_json(&parse_json(&text).unwrap()).unwrap(), f.clone());
        prop_assert_eq!(tensor_from_json(&tensor_to_json(f.coeffs())).unwrap(), f.coeffs().clone());
    }
}

#[test]
fn presentations_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let e = random_preregular(2, 2, &mut rng).unwrap();
    let h = build_presentation(&e, &e).unwrap();
    let v = presentation_to_json(h.presentation());
    assert_eq!(&presentation_from_json(&v).unwrap(), h.presentation());
}

#[test]
fn malformed_json_reports_position() {
    let err = parse_json("{\"m\": 2,\n \"coeffs\": [}").unwrap_err();
    match err {
        Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn out_of_range_indices_are_rejected() {
    let ok = r#"{"m": 2, "dim": 2, "shape": [2, 2], "entries": [{"idx": [1, 2], "val": "1"}, {"idx": [2, 1], "val": "-1"}]}"#;
    assert!(form_from_json(&parse_json(ok).unwrap()).is_ok());
    let bad = ok.replace("[1, 2]", "[1, 3]");
    assert!(form_from_json(&parse_json(&bad).unwrap()).is_err());
}

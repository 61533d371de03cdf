//! JSON encodings of inputs, reports and certificates.
//!
//! Tensors and matrices use `{"shape": [..], "entries": [{"idx": [..], "val": "p/q"}]}`
//! with 1-based indices; forms add `"m"` and `"dim"`. Polynomials are written
//! in the text syntax of [`crate::ncalg::parse_poly`]. Object keys are sorted,
//! so equal inputs give byte-identical output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cogroupoid::{
    AntipodeReport, AxiomCheck, AxiomReport, ConnectivityReport, TwistingConditionsReport, TwistingPairReport,
};
use crate::error::{Error, Result};
use crate::forms::{MLForm, PreregularityReport};
use crate::linalg::{format_scalar, parse_scalar, Matrix, SparseTensor};
use crate::ncalg::{
    parse_poly, parse_symbol, GenMorphism, MembershipWitness, MorphismReport, NCPoly, Presentation, RelationCheck,
    RelationStatus,
};
use crate::representations::{ModuleFamily, ModuleReport, NonvanishingCertificate};

#[derive(Debug, Serialize, Deserialize)]
struct EntryJson {
    idx: Vec<usize>,
    val: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct TensorJson {
    shape: Vec<usize>,
    entries: Vec<EntryJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FormJson {
    m: usize,
    dim: usize,
    #[serde(flatten)]
    tensor: TensorJson,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses JSON text, reporting line and column on failure.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(parse_err)
}

fn tensor_json(t: &SparseTensor) -> TensorJson {
    TensorJson {
        shape: t.shape().to_vec(),
        entries: t
            .entries()
            .map(|(idx, v)| EntryJson { idx: idx.iter().map(|i| i + 1).collect(), val: format_scalar(v) })
            .collect(),
    }
}

fn tensor_from(t: TensorJson) -> Result<SparseTensor> {
    let entries = t
        .entries
        .into_iter()
        .map(|e| {
            if e.idx.len() != t.shape.len() {
                return Err(Error::Parse(format!("index {:?} does not match shape {:?}", e.idx, t.shape)));
            }
            let idx = e
                .idx
                .iter()
                .zip(&t.shape)
                .map(|(&i, &n)| {
                    if i == 0 || i > n {
                        Err(Error::Parse(format!("index {:?} out of range for shape {:?} (1-based)", e.idx, t.shape)))
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((idx, parse_scalar(&e.val)?))
        })
        .collect::<Result<Vec<_>>>()?;
    SparseTensor::from_entries(t.shape, entries)
}

pub fn tensor_to_json(t: &SparseTensor) -> Value {
    serde_json::to_value(tensor_json(t)).expect("tensor serializes")
}

pub fn tensor_from_json(v: &Value) -> Result<SparseTensor> {
    tensor_from(TensorJson::deserialize(v).map_err(parse_err)?)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    tensor_to_json(&SparseTensor::from_matrix(m))
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let t = tensor_from_json(v)?;
    if t.order() != 2 {
        return Err(Error::Parse(format!("expected a matrix, got shape {:?}", t.shape())));
    }
    t.to_matrix()
}

pub fn form_to_json(f: &MLForm) -> Value {
    serde_json::to_value(FormJson { m: f.arity(), dim: f.dim(), tensor: tensor_json(f.coeffs()) })
        .expect("form serializes")
}

/// Reads a form; `m` and `dim` may be omitted when the shape determines them.
pub fn form_from_json(v: &Value) -> Result<MLForm> {
    let t = tensor_from_json(v)?;
    let m = match v.get("m") {
        Some(x) => x.as_u64().ok_or_else(|| Error::Parse("\"m\" must be a positive integer".into()))? as usize,
        None => t.order(),
    };
    let dim = match v.get("dim") {
        Some(x) => x.as_u64().ok_or_else(|| Error::Parse("\"dim\" must be a positive integer".into()))? as usize,
        None => t.shape().first().copied().unwrap_or(0),
    };
    MLForm::new(m, dim, t)
}

pub fn poly_to_json(p: &NCPoly) -> Value {
    Value::String(p.to_string())
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    let grading: BTreeMap<String, i64> = p.grading().iter().map(|(s, d)| (s.to_string(), *d)).collect();
    json!({
        "alphabet": p.alphabet().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "grading": grading,
        "relations": p.relations().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn presentation_from_json(v: &Value) -> Result<Presentation> {
    #[derive(Deserialize)]
    struct PresJson {
        alphabet: Vec<String>,
        grading: BTreeMap<String, i64>,
        relations: Vec<String>,
    }
    let raw = PresJson::deserialize(v).map_err(parse_err)?;
    let alphabet = raw.alphabet.iter().map(|s| parse_symbol(s)).collect::<Result<Vec<_>>>()?;
    let grading = raw.grading.iter().map(|(s, d)| Ok((parse_symbol(s)?, *d))).collect::<Result<_>>()?;
    let relations = raw.relations.iter().map(|r| parse_poly(r)).collect::<Result<Vec<_>>>()?;
    Presentation::new(alphabet, grading, relations)
}

pub fn morphism_to_json(phi: &GenMorphism) -> Value {
    let images: BTreeMap<String, String> = phi.images().iter().map(|(s, p)| (s.to_string(), p.to_string())).collect();
    Value::Object(
        phi.domain()
            .alphabet()
            .iter()
            .map(|s| (s.to_string(), Value::String(images[&s.to_string()].clone())))
            .collect(),
    )
}

/// `[{coeff, left, relation, right}]` with 1-based relation numbers.
pub fn witness_to_json(w: &MembershipWitness) -> Value {
    Value::Array(
        w.terms
            .iter()
            .map(|t| {
                json!({
                    "coeff": format_scalar(&t.coeff),
                    "left": t.left.to_string(),
                    "relation": t.relation + 1,
                    "right": t.right.to_string(),
                })
            })
            .collect(),
    )
}

pub fn status_to_json(s: &RelationStatus) -> Value {
    match s {
        RelationStatus::Verified { witness, bound } => json!({
            "verdict": s.verdict(),
            "bound": bound,
            "witness": witness_to_json(witness),
        }),
        RelationStatus::Falsified { reason } => json!({ "verdict": s.verdict(), "reason": reason }),
        RelationStatus::Inconclusive { bound } => json!({ "verdict": s.verdict(), "bound": bound }),
    }
}

fn relation_check_json(r: &RelationCheck) -> Value {
    json!({ "relation": r.index + 1, "image": poly_to_json(&r.image), "status": status_to_json(&r.status) })
}

pub fn morphism_report_to_json(r: &MorphismReport) -> Value {
    json!({
        "verdict": r.verdict(),
        "grading_violations": r.grading_violations.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "preserves_degree": r.preserves_degree,
        "relations": r.relations.iter().map(relation_check_json).collect::<Vec<_>>(),
    })
}

pub fn axiom_check_to_json(c: &AxiomCheck) -> Value {
    json!({
        "name": c.name,
        "verdict": c.verdict(),
        "entries": c.entries.iter().map(|e| json!({
            "label": e.label,
            "target": poly_to_json(&e.target),
            "status": status_to_json(&e.status),
        })).collect::<Vec<_>>(),
    })
}

pub fn axiom_report_to_json(r: &AxiomReport) -> Value {
    json!({
        "verdict": r.verdict(),
        "checks": r.checks.iter().map(axiom_check_to_json).collect::<Vec<_>>(),
    })
}

pub fn antipode_report_to_json(r: &AntipodeReport) -> Value {
    json!({
        "verdict": r.verdict(),
        "passing_variant": r.passing().map(|v| v.name()),
        "variants": r.variants.iter().map(|(v, rep)| json!({
            "variant": v.name(),
            "report": axiom_report_to_json(rep),
        })).collect::<Vec<_>>(),
    })
}

pub fn preregularity_to_json(r: &PreregularityReport) -> Value {
    json!({
        "preregular": r.passes(),
        "nondegenerate": r.nondegenerate,
        "kernel_witness": r.kernel_witness.as_ref().map(|w| w.iter().map(format_scalar).collect::<Vec<_>>()),
        "twist": r.twist.as_ref().map(matrix_to_json),
        "twist_invertible": r.twist_invertible,
    })
}

pub fn twisting_pair_to_json(r: &TwistingPairReport) -> Value {
    json!({
        "verdict": r.verdict(),
        "lambda": format_scalar(&r.lambda),
        "coefficient_identity": r.coefficient_identity,
        "phi1": morphism_to_json(&r.phi1),
        "phi2": morphism_to_json(&r.phi2),
        "p1_convention": r.p1_convention(),
        "checks": [
            axiom_check_to_json(&r.phi1_relations),
            axiom_check_to_json(&r.phi2_relations),
            axiom_check_to_json(&r.p1_stated),
            axiom_check_to_json(&r.p1_mirrored),
            axiom_check_to_json(&r.p2),
            axiom_check_to_json(&r.commute),
            axiom_check_to_json(&r.conjugation),
        ],
    })
}

pub fn twisting_conditions_to_json(r: &TwistingConditionsReport) -> Value {
    json!({
        "verdict": r.verdict(),
        "homogeneous_relations": r.homogeneous_relations,
        "balanced_coproduct": r.balanced_coproduct,
        "failures": r.failures,
    })
}

pub fn connectivity_to_json(r: &ConnectivityReport) -> Value {
    json!({
        "verdict": r.verdict(),
        "lambda": format_scalar(&r.lambda),
        "twisted_form": form_to_json(&r.twisted_form),
        "relations": r.relations.iter().map(relation_check_json).collect::<Vec<_>>(),
    })
}

fn degree_map(m: &BTreeMap<i64, Matrix>) -> Value {
    Value::Object(m.iter().map(|(d, a)| (d.to_string(), matrix_to_json(a))).collect())
}

pub fn module_family_to_json(fam: &ModuleFamily, report: &ModuleReport) -> Value {
    let (lo, hi) = fam.window();
    json!({
        "passes": report.passes(),
        "E": matrix_to_json(fam.e()),
        "F": matrix_to_json(fam.f()),
        "window": [lo, hi],
        "A": degree_map(fam.a_maps()),
        "B": degree_map(fam.b_maps()),
        "identities": report.identities.iter().map(|i| json!({
            "identity": i.identity,
            "degree": i.degree,
            "holds": i.holds,
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate_to_json(c: &NonvanishingCertificate) -> Value {
    json!({
        "kind": "nonvanishing",
        "e": form_to_json(&c.e),
        "f": form_to_json(&c.f),
        "seed": matrix_to_json(&c.seed),
        "rng_seed": c.rng_seed,
        "window": [c.window.0, c.window.1],
        "checks": c.checks,
        "verdict": c.verdict,
        "equivalence_note": c.equivalence_note,
    })
}

pub fn certificate_from_json(v: &Value) -> Result<NonvanishingCertificate> {
    #[derive(Deserialize)]
    struct CertJson {
        kind: String,
        e: Value,
        f: Value,
        seed: Value,
        rng_seed: Option<u64>,
        window: (i64, i64),
        checks: Vec<String>,
        verdict: String,
        equivalence_note: String,
    }
    let raw = CertJson::deserialize(v).map_err(parse_err)?;
    if raw.kind != "nonvanishing" {
        return Err(Error::Parse(format!("unknown certificate kind {:?}", raw.kind)));
    }
    Ok(NonvanishingCertificate {
        e: form_from_json(&raw.e)?,
        f: form_from_json(&raw.f)?,
        seed: matrix_from_json(&raw.seed)?,
        rng_seed: raw.rng_seed,
        window: raw.window,
        checks: raw.checks,
        verdict: raw.verdict,
        equivalence_note: raw.equivalence_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"shape":[2,2],"entries":[{"idx":[1,2],"val":"1"},{"idx":[2,1],"val":"-1"}]}"#;
        let m = matrix_from_json(&parse_json(text).unwrap()).unwrap();
        assert_eq!(m, Matrix::from_i64(&[&[0, 1], &[-1, 0]]));
        assert_eq!(matrix_to_json(&m), parse_json(text).unwrap());
    }

    #[test]
    fn form_fields() {
        let m = Matrix::from_fn(2, 2, |i, j| if i == j { frac(1, 2) } else { frac(0, 1) });
        let f = MLForm::from_matrix(&m).unwrap();
        let v = form_to_json(&f);
        assert_eq!(v["m"], 2);
        assert_eq!(v["entries"][0]["val"], "1/2");
        assert_eq!(form_from_json(&v).unwrap(), f);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(parse_json("{\"shape\": [2,"), Err(Error::Parse(msg)) if msg.contains("line 1")));
        let v = parse_json(r#"{"shape":[2,2],"entries":[{"idx":[0,1],"val":"1"}]}"#).unwrap();
        assert!(matches!(matrix_from_json(&v), Err(Error::Parse(_))));
        let v = parse_json(r#"{"shape":[2,2],"entries":[{"idx":[1,1],"val":"x"}]}"#).unwrap();
        assert!(matrix_from_json(&v).is_err());
    }

    #[test]
    fn presentation_round_trip() {
        let e = MLForm::from_matrix(&Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        let h = crate::cogroupoid::build_presentation(&e, &e).unwrap();
        let v = presentation_to_json(h.presentation());
        assert_eq!(&presentation_from_json(&v).unwrap(), h.presentation());
    }
}

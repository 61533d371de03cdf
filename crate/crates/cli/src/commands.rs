use std::fs;
use std::path::Path;

use prg_core::cogroupoid::{
    build_presentation, build_twisting_pair, verify_antipode, verify_cocategory, verify_cocycle_connectivity,
    verify_lemma_identities, verify_twisting_conditions,
};
use prg_core::forms::{aut_membership, check_preregular, dual_form, is_dual_form, MLForm};
use prg_core::io::*;
use prg_core::linalg::{format_scalar, Matrix};
use prg_core::representations::{extend_module, nonvanishing_certificate, verify_module};
use prg_core::superpotential::{derive_relations, graded_dimension};
use prg_core::{Error, Result, Verdict};
use serde_json::{json, Value};

use crate::{AlgebraCmd, CertifyCmd, Command, FormCmd, SeedArgs, TwistCmd, UqgCmd};

pub struct Outcome {
    pub report: Value,
    pub verdict: Verdict,
}

impl Outcome {
    fn new(verdict: Verdict, mut report: Value) -> Self {
        if let Value::Object(map) = &mut report {
            map.insert("verdict".into(), json!(verdict));
        }
        Outcome { report, verdict }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn read_form(path: &Path) -> Result<MLForm> {
    form_from_json(&read_json(path)?)
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    matrix_from_json(&read_json(path)?)
}

fn default_bound(e: &MLForm, given: Option<usize>) -> usize {
    given.unwrap_or(2 * e.arity() + 4)
}

fn seed_matrix(seed: &SeedArgs) -> Result<Option<Matrix>> {
    seed.seed.as_deref().map(read_matrix).transpose()
}

pub fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Form(c) => form(c),
        Command::Algebra(c) => algebra(c),
        Command::Uqg(c) => uqg(c),
        Command::Twist(c) => twist(c),
        Command::ModuleFamily { e, f, seed, window } => {
            let (e, f) = (read_form(&e)?, read_form(&f)?);
            if e.arity() != 2 || f.arity() != 2 {
                return Err(Error::Unsupported("module families are only constructed for bilinear forms".into()));
            }
            let a0 = match seed_matrix(&seed)? {
                Some(m) => m,
                None => nonvanishing_certificate(&e, &f, None, seed.rng_seed)?.seed,
            };
            let fam = extend_module(&e.matrix()?, &f.matrix()?, &a0, (window[0], window[1]))?;
            let report = verify_module(&fam);
            let verdict = if report.passes() { Verdict::Verified } else { Verdict::Falsified };
            let mut out = module_family_to_json(&fam, &report);
            out["rng_seed"] = if seed.seed.is_some() { Value::Null } else { json!(seed.rng_seed) };
            Ok(Outcome::new(verdict, out))
        }
        Command::Nonvanishing { e, f, seed, out } => {
            let (e, f) = (read_form(&e)?, read_form(&f)?);
            let cert = nonvanishing_certificate(&e, &f, seed_matrix(&seed)?.as_ref(), seed.rng_seed)?;
            let v = certificate_to_json(&cert);
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&v).expect("certificates serialize");
                fs::write(&path, text + "\n").map_err(|err| Error::Parse(format!("{}: {err}", path.display())))?;
            }
            Ok(Outcome::new(Verdict::Verified, json!({ "certificate": v })))
        }
        Command::Certify(CertifyCmd::Verify { cert }) => {
            let cert = certificate_from_json(&read_json(&cert)?)?;
            match cert.verify() {
                Ok(()) => Ok(Outcome::new(Verdict::Verified, json!({ "checks": cert.checks }))),
                Err(Error::Parse(msg)) => Err(Error::Parse(msg)),
                Err(err) => Ok(Outcome::new(Verdict::Falsified, json!({ "reason": err.to_string() }))),
            }
        }
    }
}

fn form(cmd: FormCmd) -> Result<Outcome> {
    match cmd {
        FormCmd::Check { form } => {
            let f = read_form(&form)?;
            let r = check_preregular(&f);
            let verdict = if r.passes() { Verdict::Verified } else { Verdict::Falsified };
            Ok(Outcome::new(verdict, preregularity_to_json(&r)))
        }
        FormCmd::Dual { form } => {
            let f = read_form(&form)?;
            let d = dual_form(&f)?;
            let ok = is_dual_form(&f, &d);
            let verdict = if ok { Verdict::Verified } else { Verdict::Falsified };
            Ok(Outcome::new(verdict, json!({ "dual": form_to_json(&d), "identity_holds": ok })))
        }
        FormCmd::Aut { form, phi } => {
            let (f, phi) = (read_form(&form)?, read_matrix(&phi)?);
            let a = aut_membership(&f, &phi)?;
            let verdict = if a.member { Verdict::Verified } else { Verdict::Falsified };
            Ok(Outcome::new(verdict, json!({ "member": a.member, "lambda": a.lambda.as_ref().map(format_scalar) })))
        }
    }
}

fn algebra(cmd: AlgebraCmd) -> Result<Outcome> {
    match cmd {
        AlgebraCmd::Relations { form, n } => {
            let f = read_form(&form)?;
            let rels = derive_relations(&f, n)?;
            let polys: Vec<Value> = rels.polynomials().iter().map(poly_to_json).collect();
            Ok(Outcome::new(
                Verdict::Verified,
                json!({
                    "N": n,
                    "rank": rels.rank(),
                    "relations": rels.basis.iter().map(tensor_to_json).collect::<Vec<_>>(),
                    "polynomials": polys,
                }),
            ))
        }
        AlgebraCmd::Dims { form, n, max_deg } => {
            let f = read_form(&form)?;
            let dims = graded_dimension(&f, n, max_deg)?;
            Ok(Outcome::new(Verdict::Verified, json!({ "N": n, "max_degree": max_deg, "dims": dims.dims })))
        }
    }
}

fn uqg(cmd: UqgCmd) -> Result<Outcome> {
    match cmd {
        UqgCmd::Present { e, f } => {
            let h = build_presentation(&read_form(&e)?, &read_form(&f)?)?;
            let families: Vec<Value> = h
                .families()
                .iter()
                .map(|(name, r)| json!({ "family": name, "first": r.start + 1, "last": r.end }))
                .collect();
            Ok(Outcome::new(
                Verdict::Verified,
                json!({
                    "presentation": presentation_to_json(h.presentation()),
                    "families": families,
                    "P": matrix_to_json(&h.p),
                    "Q": matrix_to_json(&h.q),
                }),
            ))
        }
        UqgCmd::VerifyAxioms { e, f, g, h, len_bound } => {
            let (e, f) = (read_form(&e)?, read_form(&f)?);
            let g = g.as_deref().map(read_form).transpose()?.unwrap_or_else(|| e.clone());
            let h = h.as_deref().map(read_form).transpose()?.unwrap_or_else(|| f.clone());
            let bound = default_bound(&e, len_bound);
            let coc = verify_cocategory(&e, &f, &g, &h, Some(bound))?;
            let anti = verify_antipode(&e, &f, bound)?;
            let verdict = Verdict::combine([coc.verdict(), anti.verdict()]);
            Ok(Outcome::new(
                verdict,
                json!({
                    "len_bound": bound,
                    "cocategory": axiom_report_to_json(&coc),
                    "antipode": antipode_report_to_json(&anti),
                }),
            ))
        }
        UqgCmd::Lemma { e, f, len_bound } => {
            let (e, f) = (read_form(&e)?, read_form(&f)?);
            let bound = default_bound(&e, len_bound);
            let r = verify_lemma_identities(&e, &f, bound, &[])?;
            Ok(Outcome::new(r.verdict(), json!({ "len_bound": bound, "lemma": axiom_report_to_json(&r) })))
        }
    }
}

fn twist(cmd: TwistCmd) -> Result<Outcome> {
    match cmd {
        TwistCmd::Pair { e, phi, len_bound } => {
            let (e, phi) = (read_form(&e)?, read_matrix(&phi)?);
            let bound = default_bound(&e, len_bound);
            let pair = build_twisting_pair(&e, &phi, bound)?;
            let cond = verify_twisting_conditions(&e)?;
            Ok(Outcome::new(
                Verdict::combine([pair.verdict(), cond.verdict()]),
                json!({
                    "len_bound": bound,
                    "pair": twisting_pair_to_json(&pair),
                    "conditions": twisting_conditions_to_json(&cond),
                }),
            ))
        }
        TwistCmd::Cocycle { e, phi, len_bound } => {
            let (e, phi) = (read_form(&e)?, read_matrix(&phi)?);
            let bound = default_bound(&e, len_bound);
            let r = verify_cocycle_connectivity(&e, &phi, bound)?;
            Ok(Outcome::new(r.verdict(), json!({ "len_bound": bound, "connectivity": connectivity_to_json(&r) })))
        }
    }
}

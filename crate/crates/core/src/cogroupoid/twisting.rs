use std::collections::BTreeMap;

use super::axioms::{AxiomCheck, EntryCheck};
use super::uqg::{counit_on, d, d_inv, delta_between};
use super::{build_presentation, PolyMatrix, UQGPresentation};
use crate::error::{Error, Result};
use crate::forms::{aut_membership, twist_form, MLForm};
use crate::linalg::{Matrix, Scalar};
use crate::ncalg::{
    budget_from_env, check_morphism_with, decide_with, GenMorphism, GenSymbol, IdealEngine, MembershipWitness, NCPoly,
    RelationCheck, RelationStatus, ZhangTwist,
};
use crate::Verdict;

fn lambda_of(e: &MLForm, phi: &Matrix) -> Result<Scalar> {
    let aut = aut_membership(e, phi)?;
    match aut.lambda {
        Some(l) if aut.member => Ok(l),
        _ => Err(Error::NotAutomorphism(phi.to_string())),
    }
}

/// The maps `φ₁` (`A ↦ φA`, `B ↦ Bφ⁻¹`, `D^{±1} ↦ λ^{±1}D^{±1}`) and `φ₂`
/// (`A ↦ Aφ⁻¹`, `B ↦ φB`, `D^{±1} ↦ λ^{∓1}D^{±1}`) on `H(e)`, where `e∘φ^{⊗m} = λe`.
pub fn twisting_maps(h: &UQGPresentation, phi: &Matrix) -> Result<(GenMorphism, GenMorphism)> {
    if h.e != h.f {
        return Err(Error::Morphism("twisting maps live on H(e, e)".into()));
    }
    let lambda = lambda_of(&h.e, phi)?;
    let phi_m = PolyMatrix::scalars(phi);
    let phi_inv = PolyMatrix::scalars(&phi.inverse()?);
    let (a, b) = (h.a_matrix(), h.b_matrix());
    let build = |a_img: PolyMatrix, b_img: PolyMatrix, d_scale: Scalar| -> Result<GenMorphism> {
        let mut images = BTreeMap::new();
        for (i, j, p) in a_img.entries() {
            images.insert(GenSymbol::a(i, j), p.clone());
        }
        for (i, j, p) in b_img.entries() {
            images.insert(GenSymbol::b(i, j), p.clone());
        }
        images.insert(GenSymbol::d(), d().scale(&d_scale));
        images.insert(GenSymbol::d_inv(), d_inv().scale(&d_scale.recip()));
        GenMorphism::new(h.presentation().clone(), h.presentation().clone(), images)
    };
    let phi1 = build(phi_m.mul(&a)?, b.mul(&phi_inv)?, lambda.clone())?;
    let phi2 = build(a.mul(&phi_inv)?, phi_m.mul(&b)?, lambda.recip())?;
    Ok((phi1, phi2))
}

fn compare(name: &str, pairs: &[(&str, &GenMorphism, &GenMorphism)]) -> AxiomCheck {
    let mut entries = Vec::new();
    for (tag, lhs, rhs) in pairs {
        for (s, l) in lhs.images() {
            let r = rhs.image(s).cloned().unwrap_or_default();
            let target = l - &r;
            let status = if target.is_zero() {
                RelationStatus::Verified { witness: MembershipWitness::default(), bound: 0 }
            } else {
                RelationStatus::Falsified { reason: format!("{l} differs from {r}") }
            };
            entries.push(EntryCheck { label: format!("{tag} {s}"), target, status });
        }
    }
    AxiomCheck { name: name.into(), entries }
}

/// Checks on the pair `(φ₁, φ₂)` attached to `φ ∈ Aut(e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistingPairReport {
    pub lambda: Scalar,
    pub phi1: GenMorphism,
    pub phi2: GenMorphism,
    /// `e∘φ^{⊗m} = λe` as a coefficient-tensor identity.
    pub coefficient_identity: bool,
    pub phi1_relations: AxiomCheck,
    pub phi2_relations: AxiomCheck,
    /// `Δφ₁ = (id⊗φ₁)Δ` and `Δφ₂ = (φ₂⊗id)Δ`.
    pub p1_stated: AxiomCheck,
    /// `Δφ₁ = (φ₁⊗id)Δ` and `Δφ₂ = (id⊗φ₂)Δ`.
    pub p1_mirrored: AxiomCheck,
    /// `ε φ₁φ₂ = ε`.
    pub p2: AxiomCheck,
    pub commute: AxiomCheck,
    /// `φ₁φ₂` is `A ↦ φAφ⁻¹`, `B ↦ φBφ⁻¹`, `D ↦ D`.
    pub conjugation: AxiomCheck,
}

impl TwistingPairReport {
    /// Which placement of the comodule condition holds, if either.
    pub fn p1_convention(&self) -> Option<&'static str> {
        if self.p1_stated.verdict() == Verdict::Verified {
            Some("stated")
        } else if self.p1_mirrored.verdict() == Verdict::Verified {
            Some("mirrored")
        } else {
            None
        }
    }

    pub fn verdict(&self) -> Verdict {
        if !self.coefficient_identity {
            return Verdict::Falsified;
        }
        let p1 = self.p1_stated.verdict().min(self.p1_mirrored.verdict());
        Verdict::combine([
            self.phi1_relations.verdict(),
            self.phi2_relations.verdict(),
            p1,
            self.p2.verdict(),
            self.conjugation.verdict(),
        ])
    }
}

/// Builds `(φ₁, φ₂)` for `φ ∈ Aut(e)` and checks that they are algebra maps
/// compatible with `Δ` and `ε`.
pub fn build_twisting_pair(e: &MLForm, phi: &Matrix, bound: usize) -> Result<TwistingPairReport> {
    let h = build_presentation(e, e)?;
    let lambda = lambda_of(e, phi)?;
    let coefficient_identity = crate::forms::pullback(e, phi)? == e.coeffs().scale(&lambda);
    let (phi1, phi2) = twisting_maps(&h, phi)?;
    let mut engine = IdealEngine::new(h.presentation(), budget_from_env());
    let r1 = check_morphism_with(&phi1, &mut engine, bound, &[])?;
    let r2 = check_morphism_with(&phi2, &mut engine, bound, &[])?;

    let delta = delta_between(&h, &h, &h)?;
    let id = GenMorphism::identity(h.presentation());
    let d_phi1 = phi1.then(&delta)?;
    let d_phi2 = phi2.then(&delta)?;
    let id_phi1 = delta.then(&id.tensor(&phi1)?)?;
    let phi1_id = delta.then(&phi1.tensor(&id)?)?;
    let id_phi2 = delta.then(&id.tensor(&phi2)?)?;
    let phi2_id = delta.then(&phi2.tensor(&id)?)?;
    let p1_stated = compare("p1-stated", &[("phi1", &d_phi1, &id_phi1), ("phi2", &d_phi2, &phi2_id)]);
    let p1_mirrored = compare("p1-mirrored", &[("phi1", &d_phi1, &phi1_id), ("phi2", &d_phi2, &id_phi2)]);

    let eps = counit_on(&h)?;
    let psi = phi2.then(&phi1)?;
    let p2 = compare("p2", &[("eps", &psi.then(&eps)?, &eps)]);
    let commute = compare("commute", &[("psi", &psi, &phi1.then(&phi2)?)]);
    let conj = PolyMatrix::scalars(phi);
    let conj_inv = PolyMatrix::scalars(&phi.inverse()?);
    let mut images = BTreeMap::new();
    for (i, j, p) in conj.mul(&h.a_matrix())?.mul(&conj_inv)?.entries() {
        images.insert(GenSymbol::a(i, j), p.clone());
    }
    for (i, j, p) in conj.mul(&h.b_matrix())?.mul(&conj_inv)?.entries() {
        images.insert(GenSymbol::b(i, j), p.clone());
    }
    images.insert(GenSymbol::d(), d());
    images.insert(GenSymbol::d_inv(), d_inv());
    let expected = GenMorphism::new(h.presentation().clone(), h.presentation().clone(), images)?;
    let conjugation = compare("conjugation", &[("psi", &psi, &expected)]);

    Ok(TwistingPairReport {
        lambda,
        phi1,
        phi2,
        coefficient_identity,
        phi1_relations: AxiomCheck::from_morphism("phi1 relations".into(), r1),
        phi2_relations: AxiomCheck::from_morphism("phi2 relations".into(), r2),
        p1_stated,
        p1_mirrored,
        p2,
        commute,
        conjugation,
    })
}

/// Homogeneity of the relations of `H(e)` and degree-balance of `Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistingConditionsReport {
    pub homogeneous_relations: bool,
    pub balanced_coproduct: bool,
    pub failures: Vec<String>,
}

impl TwistingConditionsReport {
    pub fn verdict(&self) -> Verdict {
        if self.homogeneous_relations && self.balanced_coproduct {
            Verdict::Verified
        } else {
            Verdict::Falsified
        }
    }
}

/// Every relation is homogeneous, and every term `u ⊗ v` of `Δ(x)` has
/// `deg u = deg v = deg x`.
pub fn verify_twisting_conditions(e: &MLForm) -> Result<TwistingConditionsReport> {
    let h = build_presentation(e, e)?;
    let pres = h.presentation();
    let mut failures = Vec::new();
    for (i, r) in pres.relations().iter().enumerate() {
        if pres.homogeneous_degree(r).is_err() {
            failures.push(format!("relation {} is not homogeneous", i + 1));
        }
    }
    let homogeneous_relations = failures.is_empty();
    let before = failures.len();
    let delta = delta_between(&h, &h, &h)?;
    let degree = |s: &GenSymbol| pres.grading()[&s.in_factor(1)];
    for (x, image) in delta.images() {
        let want = pres.grading()[x];
        for (w, _) in image.terms() {
            let (mut d1, mut d2) = (0, 0);
            for s in w.symbols() {
                if s.factor <= 1 {
                    d1 += degree(s);
                } else {
                    d2 += degree(s);
                }
            }
            if d1 != want || d2 != want {
                failures.push(format!("term {w} of delta({x}) has degrees ({d1}, {d2})"));
            }
        }
    }
    let balanced_coproduct = failures.len() == before;
    Ok(TwistingConditionsReport { homogeneous_relations, balanced_coproduct, failures })
}

/// Evidence that `H(e^φ)` is the Zhang twist of `H(e)` by `ψ = φ₁φ₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub lambda: Scalar,
    pub twisted_form: MLForm,
    /// Images of the relations of `H(e^φ)` under `ã ↦ a`, `b̃ ↦ ψ⁻¹(b)`,
    /// `D̃ ↦ D`, multiplied in the twisted algebra.
    pub relations: Vec<RelationCheck>,
}

impl ConnectivityReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::combine(self.relations.iter().map(|r| r.status.verdict()))
    }
}

/// Checks that the generator assignment `H(e^φ) → H(e)^ψ` respects relations.
pub fn verify_cocycle_connectivity(e: &MLForm, phi: &Matrix, bound: usize) -> Result<ConnectivityReport> {
    let h = build_presentation(e, e)?;
    let lambda = lambda_of(e, phi)?;
    let twisted_form = twist_form(e, phi)?;
    let ht = build_presentation(&twisted_form, &twisted_form)?;
    let (phi1, phi2) = twisting_maps(&h, phi)?;
    let twist = ZhangTwist::new(phi2.then(&phi1)?)?;
    let mut images: BTreeMap<GenSymbol, NCPoly> = BTreeMap::new();
    for &s in h.generators() {
        let img = match s.class {
            crate::ncalg::GenClass::B => twist.inverse().image(&s).cloned().unwrap_or_default(),
            _ => NCPoly::symbol(s),
        };
        images.insert(s, img);
    }
    let mut engine = IdealEngine::new(h.presentation(), budget_from_env());
    let mut relations = Vec::new();
    for (index, r) in ht.relations().iter().enumerate() {
        let mut image = NCPoly::zero();
        for (w, c) in r.terms() {
            let mut acc = NCPoly::one();
            for s in w.symbols() {
                acc = twist.multiply(&acc, &images[s])?;
            }
            image.add_scaled(&acc, c);
        }
        let status = decide_with(&mut engine, &image, bound, &[])?.into();
        relations.push(RelationCheck { index, image, status });
    }
    Ok(ConnectivityReport { lambda, twisted_form, relations })
}

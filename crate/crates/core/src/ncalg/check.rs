use super::{
    budget_from_env, decide_with, Falsifier, GenMorphism, GenSymbol, IdealEngine, Membership, MembershipWitness, NCPoly,
};
use crate::error::Result;
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationStatus {
    Verified { witness: MembershipWitness, bound: usize },
    Falsified { reason: String },
    Inconclusive { bound: usize },
}

impl RelationStatus {
    pub fn verdict(&self) -> Verdict {
        match self {
            RelationStatus::Verified { .. } => Verdict::Verified,
            RelationStatus::Falsified { .. } => Verdict::Falsified,
            RelationStatus::Inconclusive { .. } => Verdict::Inconclusive,
        }
    }
}

impl From<Membership> for RelationStatus {
    fn from(m: Membership) -> Self {
        match m {
            Membership::Member { witness, bound } => RelationStatus::Verified { witness, bound },
            Membership::Refuted { reason } => RelationStatus::Falsified { reason },
            Membership::Unknown { bound } => RelationStatus::Inconclusive { bound },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub index: usize,
    pub image: NCPoly,
    pub status: RelationStatus,
}

/// Outcome of checking that a generator assignment descends to the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    /// Generators with inhomogeneous images; when nonempty no relation is checked.
    pub grading_violations: Vec<GenSymbol>,
    pub preserves_degree: bool,
    pub relations: Vec<RelationCheck>,
}

impl MorphismReport {
    pub fn verdict(&self) -> Verdict {
        if !self.grading_violations.is_empty() {
            return Verdict::Falsified;
        }
        Verdict::combine(self.relations.iter().map(|r| r.status.verdict()))
    }
}

/// Checks every relation image against the codomain ideal.
pub fn check_morphism(phi: &GenMorphism, bound: usize, falsifiers: &[&dyn Falsifier]) -> Result<MorphismReport> {
    let mut engine = IdealEngine::new(phi.codomain(), budget_from_env());
    check_morphism_with(phi, &mut engine, bound, falsifiers)
}

/// As [`check_morphism`], reusing an engine built for the codomain.
pub fn check_morphism_with(
    phi: &GenMorphism,
    engine: &mut IdealEngine,
    bound: usize,
    falsifiers: &[&dyn Falsifier],
) -> Result<MorphismReport> {
    let grading_violations = phi.inhomogeneous_images();
    let preserves_degree = phi.preserves_degree();
    let mut relations = Vec::new();
    if grading_violations.is_empty() {
        for (index, r) in phi.domain().relations().iter().enumerate() {
            let image = phi.apply(r)?;
            let status = decide_with(engine, &image, bound, falsifiers)?.into();
            relations.push(RelationCheck { index, image, status });
        }
    }
    Ok(MorphismReport { grading_violations, preserves_degree, relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Presentation;
    use std::collections::BTreeMap;

    fn x(i: usize) -> NCPoly {
        NCPoly::symbol(GenSymbol::x(i))
    }

    fn plane(rel: NCPoly) -> Presentation {
        let alphabet = vec![GenSymbol::x(0), GenSymbol::x(1)];
        let grading = alphabet.iter().map(|&s| (s, 1)).collect();
        Presentation::new(alphabet, grading, vec![rel]).unwrap()
    }

    #[test]
    fn swap_preserves_commutativity() {
        let p = plane(&(&x(0) * &x(1)) - &(&x(1) * &x(0)));
        let images: BTreeMap<_, _> = [(GenSymbol::x(0), x(1)), (GenSymbol::x(1), x(0))].into_iter().collect();
        let phi = GenMorphism::new(p.clone(), p, images).unwrap();
        let rep = check_morphism(&phi, 2, &[]).unwrap();
        assert_eq!(rep.verdict(), Verdict::Verified);
    }

    #[test]
    fn swap_into_free_algebra_is_falsified() {
        let p = plane(&(&x(0) * &x(1)) - &(&x(1) * &x(0)));
        let free = {
            let alphabet = vec![GenSymbol::x(0), GenSymbol::x(1)];
            let grading = alphabet.iter().map(|&s| (s, 1)).collect();
            Presentation::new(alphabet, grading, vec![]).unwrap()
        };
        let phi = GenMorphism::new(p, free.clone(), GenMorphism::identity(&free).images().clone()).unwrap();
        assert_eq!(check_morphism(&phi, 2, &[]).unwrap().verdict(), Verdict::Falsified);
    }

    #[test]
    fn grading_violation_is_falsified() {
        let p = plane(&(&x(0) * &x(1)) - &(&x(1) * &x(0)));
        let images: BTreeMap<_, _> =
            [(GenSymbol::x(0), &x(0) + &NCPoly::one()), (GenSymbol::x(1), x(1))].into_iter().collect();
        let phi = GenMorphism::new(p.clone(), p, images).unwrap();
        let rep = check_morphism(&phi, 2, &[]).unwrap();
        assert_eq!(rep.grading_violations, vec![GenSymbol::x(0)]);
        assert_eq!(rep.verdict(), Verdict::Falsified);
    }
}

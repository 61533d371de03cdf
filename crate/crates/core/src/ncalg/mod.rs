//! Finitely presented graded algebras over the rationals: words,
//! noncommutative polynomials, presentations, generator-level morphisms,
//! Zhang twists and ideal membership with witnesses.

mod check;
mod membership;
mod morphism;
mod poly;
mod presentation;
mod symbol;
mod text;
mod twist;

pub use check::{check_morphism, check_morphism_with, MorphismReport, RelationCheck, RelationStatus};
pub use membership::{
    budget_from_env, cancel_inverse_pairs, decide_with, ideal_membership, span_membership, Falsifier, IdealEngine,
    Membership, MembershipWitness, WitnessTerm, DEFAULT_STEP_BUDGET,
};
pub use morphism::GenMorphism;
pub use poly::NCPoly;
pub use presentation::Presentation;
pub use symbol::{GenClass, GenSymbol, Word};
pub use text::{parse_poly, parse_symbol};
pub use twist::{zhang_twisted_multiply, ZhangTwist};

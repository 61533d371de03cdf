use std::collections::BTreeMap;

use num_traits::One;

use super::PolyMatrix;
use crate::error::{Error, Result};
use crate::forms::{require_preregular, unflat_index, MLForm};
use crate::linalg::{Matrix, Scalar};
use crate::ncalg::{GenMorphism, GenSymbol, NCPoly, Presentation, Word};

/// The algebra `H(e, f)` together with the forms and twists it was built from.
///
/// Relations are stored family by family: `l^m` relations for `A`, `k^m` for
/// `B`, the two `D` inverse relations and the `k²` entries of `AB - I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UQGPresentation {
    pub e: MLForm,
    pub f: MLForm,
    /// Cyclic twist of `e`.
    pub p: Matrix,
    /// Cyclic twist of `f`.
    pub q: Matrix,
    pres: Presentation,
}

impl UQGPresentation {
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn k(&self) -> usize {
        self.e.dim()
    }

    pub fn l(&self) -> usize {
        self.f.dim()
    }

    pub fn m(&self) -> usize {
        self.e.arity()
    }

    pub fn relations(&self) -> &[NCPoly] {
        self.pres.relations()
    }

    /// Index ranges of the four relation families.
    pub fn families(&self) -> [(&'static str, std::ops::Range<usize>); 4] {
        let (k, l, m) = (self.k(), self.l(), self.m() as u32);
        let a_end = l.pow(m);
        let b_end = a_end + k.pow(m);
        [("a", 0..a_end), ("b", a_end..b_end), ("D", b_end..b_end + 2), ("AB", b_end + 2..b_end + 2 + k * k)]
    }

    /// `A` as a `k × l` matrix of generators.
    pub fn a_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.k(), self.l(), |i, j| GenSymbol::a(i, j).into())
    }

    /// `B` as an `l × k` matrix of generators.
    pub fn b_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.l(), self.k(), |i, j| GenSymbol::b(i, j).into())
    }

    /// Generators in alphabet order.
    pub fn generators(&self) -> &[GenSymbol] {
        self.pres.alphabet()
    }
}

pub(crate) fn d() -> NCPoly {
    NCPoly::symbol(GenSymbol::d())
}

pub(crate) fn d_inv() -> NCPoly {
    NCPoly::symbol(GenSymbol::d_inv())
}

/// Builds `H(e, f)`.
pub fn build_presentation(e: &MLForm, f: &MLForm) -> Result<UQGPresentation> {
    if e.arity() != f.arity() {
        return Err(Error::DimensionMismatch(format!("forms of arity {} and {}", e.arity(), f.arity())));
    }
    let p = require_preregular(e)?;
    let q = require_preregular(f)?;
    let (k, l, m) = (e.dim(), f.dim(), e.arity());

    let mut alphabet = Vec::with_capacity(2 * k * l + 2);
    alphabet.extend((0..k).flat_map(|i| (0..l).map(move |j| GenSymbol::a(i, j))));
    alphabet.extend((0..l).flat_map(|i| (0..k).map(move |j| GenSymbol::b(i, j))));
    alphabet.push(GenSymbol::d());
    alphabet.push(GenSymbol::d_inv());
    let grading: BTreeMap<GenSymbol, i64> = alphabet
        .iter()
        .map(|&s| {
            let deg = match s.class {
                crate::ncalg::GenClass::A => 1,
                crate::ncalg::GenClass::B => -1,
                crate::ncalg::GenClass::Dpos => m as i64,
                _ => -(m as i64),
            };
            (s, deg)
        })
        .collect();

    let mut relations = Vec::new();
    for jt in 0..l.pow(m as u32) {
        let j = unflat_index(jt, l, m);
        let mut r = NCPoly::from_terms(
            e.coeffs()
                .entries()
                .map(|(i, c)| (Word::from_symbols(i.iter().zip(&j).map(|(&a, &b)| GenSymbol::a(a, b))), c.clone())),
        );
        r.add_scaled(&d(), &-f.get(&j));
        relations.push(r);
    }
    for jt in 0..k.pow(m as u32) {
        let j = unflat_index(jt, k, m);
        let mut r = NCPoly::from_terms(f.coeffs().entries().map(|(i, c)| {
            let word = Word::from_symbols(i.iter().zip(&j).rev().map(|(&a, &b)| GenSymbol::b(a, b)));
            (word, c.clone())
        }));
        r.add_scaled(&d_inv(), &-e.get(&j));
        relations.push(r);
    }
    relations.push(&(&d() * &d_inv()) - &NCPoly::one());
    relations.push(&(&d_inv() * &d()) - &NCPoly::one());
    for i in 0..k {
        for j in 0..k {
            let mut r = NCPoly::from_terms(
                (0..l).map(|p| (Word::from_symbols([GenSymbol::a(i, p), GenSymbol::b(p, j)]), Scalar::one())),
            );
            if i == j {
                r.add_term(Word::empty(), -Scalar::one());
            }
            relations.push(r);
        }
    }
    let pres = Presentation::new(alphabet, grading, relations)?;
    Ok(UQGPresentation { e: e.clone(), f: f.clone(), p, q, pres })
}

/// `Δ^f_{e,g}: H(e,g) → H(e,f) ⊗ H(f,g)` from prebuilt presentations.
pub fn delta_between(eg: &UQGPresentation, ef: &UQGPresentation, fg: &UQGPresentation) -> Result<GenMorphism> {
    if ef.e != eg.e || fg.f != eg.f || ef.f != fg.e {
        return Err(Error::Morphism("presentations do not compose".into()));
    }
    let codomain = ef.presentation().tensor(fg.presentation())?;
    let (p, q, r) = (eg.k(), ef.l(), eg.l());
    let two = |s: GenSymbol| s.in_factor(2);
    let tensor = |x: GenSymbol, y: GenSymbol| NCPoly::word(Word::from_symbols([x, two(y)]));
    let mut images = BTreeMap::new();
    for i in 0..p {
        for j in 0..r {
            let mut img = NCPoly::zero();
            for k in 0..q {
                img = &img + &tensor(GenSymbol::a(i, k), GenSymbol::a(k, j));
            }
            images.insert(GenSymbol::a(i, j), img);
            let mut img = NCPoly::zero();
            for k in 0..q {
                img = &img + &tensor(GenSymbol::b(k, i), GenSymbol::b(j, k));
            }
            images.insert(GenSymbol::b(j, i), img);
        }
    }
    images.insert(GenSymbol::d(), tensor(GenSymbol::d(), GenSymbol::d()));
    images.insert(GenSymbol::d_inv(), tensor(GenSymbol::d_inv(), GenSymbol::d_inv()));
    GenMorphism::new(eg.presentation().clone(), codomain, images)
}

/// `Δ^f_{e,g}`.
pub fn build_delta(e: &MLForm, f: &MLForm, g: &MLForm) -> Result<GenMorphism> {
    delta_between(&build_presentation(e, g)?, &build_presentation(e, f)?, &build_presentation(f, g)?)
}

/// `ε_e: H(e) → k` from a prebuilt `H(e)`.
pub fn counit_on(he: &UQGPresentation) -> Result<GenMorphism> {
    if he.e != he.f {
        return Err(Error::Morphism("the counit lives on H(e, e)".into()));
    }
    let delta = |i: usize, j: usize| if i == j { NCPoly::one() } else { NCPoly::zero() };
    let mut images = BTreeMap::new();
    for i in 0..he.k() {
        for j in 0..he.k() {
            images.insert(GenSymbol::a(i, j), delta(i, j));
            images.insert(GenSymbol::b(i, j), delta(i, j));
        }
    }
    images.insert(GenSymbol::d(), NCPoly::one());
    images.insert(GenSymbol::d_inv(), NCPoly::one());
    GenMorphism::new(he.presentation().clone(), Presentation::scalars(), images)
}

pub fn build_counit(e: &MLForm) -> Result<GenMorphism> {
    counit_on(&build_presentation(e, e)?)
}

/// Placement of the twists in the antipode image of `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AntipodeVariant {
    /// `S(B) = D⁻¹ Q⁻¹ A P D`.
    Lemma,
    /// `S(B) = D⁻¹ Qᵀ A P⁻ᵀ D`.
    Transposed,
}

impl AntipodeVariant {
    pub const ALL: [AntipodeVariant; 2] = [AntipodeVariant::Lemma, AntipodeVariant::Transposed];

    pub fn name(self) -> &'static str {
        match self {
            AntipodeVariant::Lemma => "lemma",
            AntipodeVariant::Transposed => "transposed",
        }
    }

    /// The left and right matrices `(L, R)` with `S(B) = D⁻¹ L A R D`.
    pub fn factors(self, p: &Matrix, q: &Matrix) -> Result<(Matrix, Matrix)> {
        Ok(match self {
            AntipodeVariant::Lemma => (q.inverse()?, p.clone()),
            AntipodeVariant::Transposed => (q.transpose(), p.inverse()?.transpose()),
        })
    }
}

/// `S_{e,f}: H(e,f) → H(f,e)^op` from prebuilt `H(e,f)` and `H(f,e)`.
pub fn antipode_between(ef: &UQGPresentation, fe: &UQGPresentation, variant: AntipodeVariant) -> Result<GenMorphism> {
    if ef.e != fe.f || ef.f != fe.e {
        return Err(Error::Morphism("antipode needs H(e,f) and H(f,e)".into()));
    }
    let (left, right) = variant.factors(&ef.p, &ef.q)?;
    let core = PolyMatrix::scalars(&left).mul(&fe.a_matrix())?.mul(&PolyMatrix::scalars(&right))?;
    let sb = core.conjugate(&d_inv(), &d());
    let mut images = BTreeMap::new();
    for i in 0..ef.k() {
        for j in 0..ef.l() {
            images.insert(GenSymbol::a(i, j), NCPoly::symbol(GenSymbol::b(i, j)));
        }
    }
    for i in 0..ef.l() {
        for j in 0..ef.k() {
            images.insert(GenSymbol::b(i, j), sb.get(i, j).clone());
        }
    }
    images.insert(GenSymbol::d(), d_inv());
    images.insert(GenSymbol::d_inv(), d());
    GenMorphism::new(ef.presentation().clone(), fe.presentation().clone().with_opposite(true), images)
}

pub fn build_antipode(e: &MLForm, f: &MLForm, variant: AntipodeVariant) -> Result<GenMorphism> {
    antipode_between(&build_presentation(e, f)?, &build_presentation(f, e)?, variant)
}

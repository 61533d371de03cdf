use std::collections::BTreeMap;

use num_traits::Zero;

use super::{GenSymbol, NCPoly, Presentation, Word};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// An algebra map given by the images of the generators of `domain`.
///
/// It descends to the quotient exactly when every relation maps into the
/// ideal of `codomain`; see [`super::check_morphism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenMorphism {
    domain: Presentation,
    codomain: Presentation,
    images: BTreeMap<GenSymbol, NCPoly>,
}

impl GenMorphism {
    pub fn new(domain: Presentation, codomain: Presentation, images: BTreeMap<GenSymbol, NCPoly>) -> Result<Self> {
        for s in domain.alphabet() {
            let img = images.get(s).ok_or_else(|| Error::Morphism(format!("no image for generator {s}")))?;
            codomain.check_symbols(img)?;
        }
        if let Some(s) = images.keys().find(|s| !domain.contains(s)) {
            return Err(Error::Morphism(format!("image given for non-generator {s}")));
        }
        Ok(Self { domain, codomain, images })
    }

    pub fn identity(p: &Presentation) -> Self {
        let images = p.alphabet().iter().map(|&s| (s, NCPoly::symbol(s))).collect();
        Self { domain: p.clone(), codomain: p.clone(), images }
    }

    pub fn domain(&self) -> &Presentation {
        &self.domain
    }

    pub fn codomain(&self) -> &Presentation {
        &self.codomain
    }

    pub fn images(&self) -> &BTreeMap<GenSymbol, NCPoly> {
        &self.images
    }

    pub fn image(&self, s: &GenSymbol) -> Option<&NCPoly> {
        self.images.get(s)
    }

    /// Image of a word: the product of generator images in the codomain.
    pub fn apply_word(&self, w: &Word) -> Result<NCPoly> {
        let mut acc = NCPoly::one();
        for s in w.symbols() {
            let img = self.images.get(s).ok_or_else(|| Error::Morphism(format!("{s} is not in the domain")))?;
            acc = self.codomain.multiply(&acc, img);
        }
        Ok(acc)
    }

    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        let mut cache: BTreeMap<&Word, NCPoly> = BTreeMap::new();
        for (w, c) in p.terms() {
            let img = match cache.get(w) {
                Some(i) => i.clone(),
                None => {
                    let i = self.apply_word(w)?;
                    cache.insert(w, i.clone());
                    i
                }
            };
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &GenMorphism) -> Result<GenMorphism> {
        if self.codomain.alphabet() != after.domain.alphabet() {
            return Err(Error::Morphism("composition across different alphabets".into()));
        }
        let images = self.images.iter().map(|(&s, p)| Ok((s, after.apply(p)?))).collect::<Result<_>>()?;
        GenMorphism::new(self.domain.clone(), after.codomain.clone(), images)
    }

    /// `self ⊗ other` between the tensor products of domains and codomains.
    pub fn tensor(&self, other: &GenMorphism) -> Result<GenMorphism> {
        let domain = self.domain.tensor(&other.domain)?;
        let codomain = self.codomain.tensor(&other.codomain)?;
        let d_off = self.domain.factor_offset();
        let c_off = self.codomain.factor_offset();
        let mut images = self.images.clone();
        for (s, p) in &other.images {
            images.insert(s.shifted(d_off), p.map_symbols(|t| t.shifted(c_off)));
        }
        GenMorphism::new(domain, codomain, images)
    }

    /// Failures of homogeneity: generators whose image is not homogeneous.
    pub fn inhomogeneous_images(&self) -> Vec<GenSymbol> {
        self.images.iter().filter(|(_, p)| self.codomain.homogeneous_degree(p).is_err()).map(|(s, _)| *s).collect()
    }

    /// True when each nonzero image has the degree of its generator.
    pub fn preserves_degree(&self) -> bool {
        self.images.iter().all(|(s, p)| match self.codomain.homogeneous_degree(p) {
            Ok(Some(d)) => Some(&d) == self.domain.grading().get(s),
            Ok(None) => true,
            Err(_) => false,
        })
    }

    /// Inverse of a map sending each generator to a linear combination of
    /// generators of the same alphabet. Errors when the map is not of this
    /// form or the substitution matrix is singular.
    pub fn linear_inverse(&self) -> Result<GenMorphism> {
        let alpha = self.domain.alphabet();
        if alpha != self.codomain.alphabet() {
            return Err(Error::Morphism("linear inverse needs an endomorphism".into()));
        }
        let pos: BTreeMap<GenSymbol, usize> = alpha.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let n = alpha.len();
        let mut m = Matrix::zeros(n, n);
        for (j, s) in alpha.iter().enumerate() {
            for (w, c) in self.images[s].terms() {
                if w.len() != 1 {
                    return Err(Error::Morphism(format!("image of {s} is not linear")));
                }
                m.set(pos[&w.symbols()[0]], j, c.clone());
            }
        }
        let inv = m.inverse().map_err(|_| Error::Morphism("substitution is singular".into()))?;
        let images = alpha
            .iter()
            .enumerate()
            .map(|(j, &s)| {
                let p = NCPoly::from_terms(
                    (0..n)
                        .filter(|&i| !inv.get(i, j).is_zero())
                        .map(|i| (Word::single(alpha[i]), inv.get(i, j).clone())),
                );
                (s, p)
            })
            .collect();
        GenMorphism::new(self.codomain.clone(), self.domain.clone(), images)
    }

    /// The `k`-th power (negative powers through [`Self::linear_inverse`]).
    pub fn power(&self, k: i64) -> Result<GenMorphism> {
        let base = if k < 0 { self.linear_inverse()? } else { self.clone() };
        let mut out = GenMorphism::identity(&self.domain);
        for _ in 0..k.unsigned_abs() {
            out = out.then(&base)?;
        }
        Ok(out)
    }

    pub fn scale_images(&self, c: &Scalar) -> Result<GenMorphism> {
        let images = self.images.iter().map(|(s, p)| (*s, p.scale(c))).collect();
        GenMorphism::new(self.domain.clone(), self.codomain.clone(), images)
    }
}

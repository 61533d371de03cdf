use std::collections::{BTreeMap, BTreeSet};

use super::{GenSymbol, NCPoly, Word};
use crate::error::{Error, Result};

/// A finitely presented graded algebra `k<alphabet> / (relations)`.
///
/// Symbols from different factor tags commute, so a presentation whose
/// alphabet spans several factors is the tensor product of its factors.
/// With `opposite` set the multiplication is reversed; the relation list is
/// the one of the underlying algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Vec<GenSymbol>,
    grading: BTreeMap<GenSymbol, i64>,
    relations: Vec<NCPoly>,
    opposite: bool,
}

impl Presentation {
    pub fn new(alphabet: Vec<GenSymbol>, grading: BTreeMap<GenSymbol, i64>, relations: Vec<NCPoly>) -> Result<Self> {
        let set: BTreeSet<GenSymbol> = alphabet.iter().copied().collect();
        if set.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch("alphabet has repeated symbols".into()));
        }
        if let Some(s) = alphabet.iter().find(|s| !grading.contains_key(s)) {
            return Err(Error::AlphabetMismatch(format!("symbol {s} has no degree")));
        }
        if let Some(s) = grading.keys().find(|s| !set.contains(s)) {
            return Err(Error::AlphabetMismatch(format!("graded symbol {s} is not in the alphabet")));
        }
        let p = Self { alphabet, grading, relations: Vec::new(), opposite: false };
        for r in &relations {
            p.check_symbols(r)?;
            p.homogeneous_degree(r)?;
        }
        Ok(Self { relations, ..p })
    }

    /// The ground field: no generators, no relations.
    pub fn scalars() -> Self {
        Self { alphabet: Vec::new(), grading: BTreeMap::new(), relations: Vec::new(), opposite: false }
    }

    pub fn with_opposite(mut self, opposite: bool) -> Self {
        self.opposite = opposite;
        self
    }

    pub fn alphabet(&self) -> &[GenSymbol] {
        &self.alphabet
    }

    pub fn grading(&self) -> &BTreeMap<GenSymbol, i64> {
        &self.grading
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn contains(&self, s: &GenSymbol) -> bool {
        self.grading.contains_key(s)
    }

    /// Distinct factor tags used by the alphabet, ascending.
    pub fn factors(&self) -> Vec<u8> {
        self.alphabet.iter().map(|s| s.factor).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn check_symbols(&self, p: &NCPoly) -> Result<()> {
        match p.symbols().find(|s| !self.contains(s)) {
            Some(s) => Err(Error::AlphabetMismatch(format!("symbol {s} is not a generator"))),
            None => Ok(()),
        }
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.symbols().iter().map(|s| self.grading.get(s).copied().unwrap_or(0)).sum()
    }

    /// The common degree of all terms; `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self, p: &NCPoly) -> Result<Option<i64>> {
        let mut deg = None;
        for (w, _) in p.terms() {
            let d = self.word_degree(w);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::NotHomogeneous(format!("{p} mixes degrees {e} and {d}"))),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Splits `p` into homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self, p: &NCPoly) -> BTreeMap<i64, NCPoly> {
        let mut parts: BTreeMap<i64, NCPoly> = BTreeMap::new();
        for (w, c) in p.terms() {
            parts.entry(self.word_degree(w)).or_default().add_term(w.clone(), c.clone());
        }
        parts
    }

    /// Product in this algebra (reversed when `opposite`).
    pub fn multiply(&self, p: &NCPoly, q: &NCPoly) -> NCPoly {
        if self.opposite {
            q.mul(p)
        } else {
            p.mul(q)
        }
    }

    /// `P ⊗ Q`: the factor tags of `Q` are shifted past those of `P`.
    pub fn tensor(&self, other: &Presentation) -> Result<Presentation> {
        if self.opposite || other.opposite {
            return Err(Error::Unsupported("tensor product of opposite presentations".into()));
        }
        let offset = self.factors().last().copied().unwrap_or(0);
        let shift = |s: GenSymbol| s.shifted(offset);
        let mut alphabet = self.alphabet.clone();
        alphabet.extend(other.alphabet.iter().map(|&s| shift(s)));
        let mut grading = self.grading.clone();
        grading.extend(other.grading.iter().map(|(&s, &d)| (shift(s), d)));
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().map(|r| r.map_symbols(shift)));
        Presentation::new(alphabet, grading, relations)
    }

    /// Offset to apply to the factor tags of the right operand of `tensor`.
    pub fn factor_offset(&self) -> u8 {
        self.factors().last().copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn plane() -> Presentation {
        let x = |i| NCPoly::symbol(GenSymbol::x(i));
        let alphabet = vec![GenSymbol::x(0), GenSymbol::x(1)];
        let grading = alphabet.iter().map(|&s| (s, 1)).collect();
        Presentation::new(alphabet, grading, vec![&(&x(0) * &x(1)) - &(&x(1) * &x(0))]).unwrap()
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let alphabet = vec![GenSymbol::x(0)];
        let grading = alphabet.iter().map(|&s| (s, 1)).collect();
        let bad = &NCPoly::symbol(GenSymbol::x(0)) - &NCPoly::one();
        assert!(matches!(Presentation::new(alphabet, grading, vec![bad]), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        let alphabet = vec![GenSymbol::x(0)];
        let grading = alphabet.iter().map(|&s| (s, 1)).collect();
        let bad = NCPoly::symbol(GenSymbol::x(3));
        assert!(matches!(Presentation::new(alphabet, grading, vec![bad]), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn tensor_shifts_factors() {
        let t = plane().tensor(&plane()).unwrap();
        assert_eq!(t.factors(), vec![1, 2]);
        assert_eq!(t.relations().len(), 2);
        assert_eq!(t.relations()[1].to_string(), "x[1]@2.x[2]@2 - x[2]@2.x[1]@2");
    }

    #[test]
    fn opposite_reverses_products() {
        let p = plane().with_opposite(true);
        let x0 = NCPoly::symbol(GenSymbol::x(0));
        let x1 = NCPoly::symbol(GenSymbol::x(1));
        assert_eq!(p.multiply(&x0, &x1), &x1 * &x0);
        let parts = p.homogeneous_parts(&(&x0 + &NCPoly::constant(int(2))));
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0, 1]);
    }
}

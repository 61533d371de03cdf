use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{GenSymbol, Word};
use crate::linalg::Scalar;

/// Noncommutative polynomial: finitely many words with nonzero exact coefficients.
///
/// Words are kept in tensor-normal form, so polynomials over several tensor
/// factors compare structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, Scalar::one())
    }

    pub fn symbol(s: GenSymbol) -> Self {
        Self::word(Word::single(s))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let w = w.normalized();
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest word in the length-lexicographic order, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn max_segment_len(&self) -> usize {
        self.terms.keys().map(Word::segment_length).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> impl Iterator<Item = GenSymbol> + '_ {
        self.terms.keys().flat_map(|w| w.symbols().iter().copied())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    /// Concatenation product in the free algebra.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// `u · self · v` for words `u`, `v`.
    pub fn sandwich(&self, u: &Word, v: &Word) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(u.concat(w).concat(v), c.clone());
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn map_symbols(&self, f: impl Fn(GenSymbol) -> GenSymbol) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.map(&f), c.clone())))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }
}

impl From<GenSymbol> for NCPoly {
    fn from(s: GenSymbol) -> Self {
        NCPoly::symbol(s)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        NCPoly::mul(self, rhs)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag} * {w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    fn x(i: usize) -> NCPoly {
        NCPoly::symbol(GenSymbol::x(i))
    }

    #[test]
    fn display_format() {
        let p = &(&x(0) * &x(1)) - &(&x(1) * &x(0)).scale(&frac(3, 2));
        assert_eq!(p.to_string(), "x[1].x[2] - 3/2 * x[2].x[1]");
        let q = &NCPoly::constant(int(-2)) + &x(0);
        assert_eq!(q.to_string(), "-2 + x[1]");
        assert_eq!(NCPoly::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &x(0) - &x(0);
        assert!(p.is_zero());
    }

    #[test]
    fn tensor_factors_commute() {
        let a1 = NCPoly::symbol(GenSymbol::a(0, 0));
        let a2 = NCPoly::symbol(GenSymbol::a(0, 0).in_factor(2));
        assert_eq!(&a2 * &a1, &a1 * &a2);
    }

    #[test]
    fn leading_term_is_longest() {
        let p = &(&x(0) * &x(0)) + &x(1).scale(&int(5));
        assert_eq!(p.leading().unwrap().0.to_string(), "x[1].x[1]");
        assert_eq!(p.monic(), p);
    }
}

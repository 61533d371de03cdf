use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{GenMorphism, NCPoly, Presentation};
use crate::error::{Error, Result};

/// A graded automorphism `ψ` used to deform the multiplication:
/// `r ∘ s = r · ψ^{deg r}(s)` for homogeneous `r`.
#[derive(Debug, Clone)]
pub struct ZhangTwist {
    forward: GenMorphism,
    inverse: GenMorphism,
}

impl ZhangTwist {
    /// `psi` must send each generator to a linear combination of generators
    /// of the same degree; its inverse is computed from the substitution matrix.
    pub fn new(psi: GenMorphism) -> Result<Self> {
        if !psi.preserves_degree() {
            return Err(Error::NotHomogeneous("twisting map must preserve degree".into()));
        }
        let inverse = psi.linear_inverse()?;
        Ok(Self { forward: psi, inverse })
    }

    pub fn presentation(&self) -> &Presentation {
        self.forward.domain()
    }

    pub fn forward(&self) -> &GenMorphism {
        &self.forward
    }

    pub fn inverse(&self) -> &GenMorphism {
        &self.inverse
    }

    /// `ψ^k(p)`.
    pub fn power_apply(&self, k: i64, p: &NCPoly) -> Result<NCPoly> {
        let map = if k >= 0 { &self.forward } else { &self.inverse };
        let mut out = p.clone();
        for _ in 0..k.unsigned_abs() {
            out = map.apply(&out)?;
        }
        Ok(out)
    }

    /// Twisted product of free-algebra representatives.
    pub fn multiply(&self, p: &NCPoly, q: &NCPoly) -> Result<NCPoly> {
        let pres = self.presentation();
        let mut out = NCPoly::zero();
        let mut powers: BTreeMap<i64, NCPoly> = BTreeMap::new();
        for (d, part) in pres.homogeneous_parts(p) {
            let twisted = match powers.entry(d) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(self.power_apply(d, q)?),
            };
            out = &out + &pres.multiply(&part, twisted);
        }
        Ok(out)
    }

    /// Left-to-right twisted product of the symbols of each word, extended
    /// linearly: the image of a free-algebra element under the identification
    /// of generators with their twisted counterparts.
    pub fn twisted_word_image(&self, p: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NCPoly::one();
            for s in w.symbols() {
                acc = self.multiply(&acc, &NCPoly::symbol(*s))?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }
}

/// `p ∘ q` under the Zhang twist by `twist`.
pub fn zhang_twisted_multiply(p: &NCPoly, q: &NCPoly, twist: &ZhangTwist) -> Result<NCPoly> {
    twist.multiply(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::ncalg::GenSymbol;

    fn free2() -> Presentation {
        let alphabet = vec![GenSymbol::x(0), GenSymbol::x(1)];
        let grading = alphabet.iter().map(|&s| (s, 1)).collect();
        Presentation::new(alphabet, grading, vec![]).unwrap()
    }

    fn x(i: usize) -> NCPoly {
        NCPoly::symbol(GenSymbol::x(i))
    }

    fn diag_twist() -> ZhangTwist {
        let images =
            [(GenSymbol::x(0), x(0).scale(&int(2))), (GenSymbol::x(1), x(1).scale(&int(3)))].into_iter().collect();
        ZhangTwist::new(GenMorphism::new(free2(), free2(), images).unwrap()).unwrap()
    }

    #[test]
    fn twisted_product_scales_by_degree() {
        let t = diag_twist();
        // x0 ∘ x1 = x0 · ψ(x1) = 3 x0 x1
        assert_eq!(t.multiply(&x(0), &x(1)).unwrap(), (&x(0) * &x(1)).scale(&int(3)));
        // (x0 x0) ∘ x1 = 9 x0 x0 x1
        let xx = &x(0) * &x(0);
        assert_eq!(t.multiply(&xx, &x(1)).unwrap(), (&xx * &x(1)).scale(&int(9)));
    }

    #[test]
    fn twisted_product_is_associative() {
        let t = diag_twist();
        let (a, b, c) = (&x(0) + &x(1), &x(1) * &x(0), &x(0) - &x(1));
        let left = t.multiply(&t.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = t.multiply(&a, &t.multiply(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn degree_changing_twist_is_rejected() {
        let images = [(GenSymbol::x(0), &x(0) * &x(0)), (GenSymbol::x(1), x(1))].into_iter().collect();
        let psi = GenMorphism::new(free2(), free2(), images).unwrap();
        assert!(ZhangTwist::new(psi).is_err());
    }
}

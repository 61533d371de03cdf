//! Relation spaces of the superpotential algebras `A(f, N)` and their graded
//! dimensions.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{flat_index, unflat_index, MLForm};
use crate::linalg::{Matrix, Scalar, SparseEchelon, SparseTensor};
use crate::ncalg::{GenSymbol, NCPoly, Presentation, Word};

/// Default cap on the number of words `n^k` handled in a single degree.
pub const DEFAULT_WORD_BUDGET: usize = 1 << 20;

/// The degree-`N` relations of `A(f, N)`, as a linearly independent family of
/// tensors in `V^{⊗N}` (reduced row-echelon rows of the slice span).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSpace {
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<SparseTensor>,
}

impl RelationSpace {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The relations as noncommutative polynomials in `x_1, .., x_n`.
    pub fn polynomials(&self) -> Vec<NCPoly> {
        self.basis
            .iter()
            .map(|t| {
                NCPoly::from_terms(
                    t.entries().map(|(idx, c)| (Word::from_symbols(idx.iter().map(|&i| GenSymbol::x(i))), c.clone())),
                )
            })
            .collect()
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        let alphabet: Vec<GenSymbol> = (0..self.dim).map(GenSymbol::x).collect();
        let grading = alphabet.iter().map(|s| (*s, 1)).collect();
        Presentation::new(alphabet, grading, self.polynomials())
    }
}

/// Slices `f[i_1..i_{m-N}, -]` spanning the relation space of `A(f, N)`.
pub fn derive_relations(f: &MLForm, degree: usize) -> Result<RelationSpace> {
    let m = f.arity();
    if degree < 2 || degree > m {
        return Err(Error::OutOfRange(format!("need 2 <= N <= {m}, got N = {degree}")));
    }
    let n = f.dim();
    let prefix_len = m - degree;
    let mut slices = Matrix::zeros(n.pow(prefix_len as u32), n.pow(degree as u32));
    for (idx, v) in f.coeffs().entries() {
        slices.set(flat_index(&idx[..prefix_len], n), flat_index(&idx[prefix_len..], n), v.clone());
    }
    let rr = slices.rref();
    let mut basis = Vec::with_capacity(rr.rank);
    for row in 0..rr.rank {
        let entries = (0..slices.cols())
            .filter(|&c| !rr.reduced.get(row, c).is_zero())
            .map(|c| (unflat_index(c, n, degree), rr.reduced.get(row, c).clone()));
        basis.push(SparseTensor::from_entries(vec![n; degree], entries)?);
    }
    Ok(RelationSpace { degree, dim: n, basis })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDims {
    pub max_degree: usize,
    pub dims: Vec<usize>,
}

pub fn graded_dimension(f: &MLForm, degree: usize, max_degree: usize) -> Result<GradedDims> {
    graded_dimension_with_budget(f, degree, max_degree, DEFAULT_WORD_BUDGET)
}

pub fn graded_dimension_with_budget(f: &MLForm, degree: usize, max_degree: usize, budget: usize) -> Result<GradedDims> {
    let rels = derive_relations(f, degree)?;
    quotient_dimensions(&rels, max_degree, budget)
}

/// `dim V^{⊗k} / Σ_{i+N+j=k} V^{⊗i} R V^{⊗j}` for `k = 0..=max_degree`.
pub fn quotient_dimensions(rels: &RelationSpace, max_degree: usize, budget: usize) -> Result<GradedDims> {
    let n = rels.dim;
    let nrel = rels.degree;
    let mut dims = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let words = n
            .checked_pow(k as u32)
            .filter(|&w| w <= budget)
            .ok_or_else(|| Error::BudgetExceeded { budget, what: format!("{n}^{k} words in degree {k}") })?;
        if k < nrel {
            dims.push(words);
            continue;
        }
        let mut ech = SparseEchelon::new();
        for left in 0..=k - nrel {
            let right = k - nrel - left;
            let right_count = n.pow(right as u32);
            let mid_scale = right_count;
            let left_scale = n.pow((k - left) as u32);
            for rel in &rels.basis {
                let mid: Vec<(usize, &Scalar)> = rel.entries().map(|(idx, c)| (flat_index(idx, n), c)).collect();
                for u in 0..n.pow(left as u32) {
                    for v in 0..right_count {
                        let row: BTreeMap<usize, Scalar> =
                            mid.iter().map(|&(w, c)| (u * left_scale + w * mid_scale + v, c.clone())).collect();
                        ech.insert(row);
                    }
                }
            }
        }
        dims.push(words - ech.rank());
    }
    Ok(GradedDims { max_degree, dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    fn form(rows: &[&[i64]]) -> MLForm {
        MLForm::from_matrix(&Matrix::from_i64(rows)).unwrap()
    }

    fn poly_text(rs: &RelationSpace) -> Vec<String> {
        rs.polynomials().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn commutator_relation() {
        let rs = derive_relations(&form(&[&[0, 1], &[-1, 0]]), 2).unwrap();
        assert_eq!(rs.rank(), 1);
        assert_eq!(poly_text(&rs), vec!["x[1].x[2] - x[2].x[1]"]);
    }

    #[test]
    fn jordan_relation() {
        let rs = derive_relations(&form(&[&[0, 1], &[-1, 1]]), 2).unwrap();
        assert_eq!(poly_text(&rs), vec!["x[1].x[2] - x[2].x[1] + x[2].x[2]"]);
    }

    #[test]
    fn scalar_square() {
        let rs = derive_relations(&form(&[&[1]]), 2).unwrap();
        assert_eq!(poly_text(&rs), vec!["x[1].x[1]"]);
        let d = graded_dimension(&form(&[&[1]]), 2, 3).unwrap();
        assert_eq!(d.dims, vec![1, 1, 0, 0]);
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(derive_relations(&form(&[&[1]]), 3), Err(Error::OutOfRange(_))));
        assert!(matches!(derive_relations(&form(&[&[1]]), 1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn planes_have_linear_growth() {
        let quantum = MLForm::from_matrix(&Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => int(1),
            (1, 0) => frac(-1, 2),
            _ => int(0),
        }))
        .unwrap();
        assert_eq!(graded_dimension(&quantum, 2, 4).unwrap().dims, vec![1, 2, 3, 4, 5]);
        let jordan = form(&[&[0, 1], &[-1, 1]]);
        assert_eq!(graded_dimension(&jordan, 2, 4).unwrap().dims, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn budget_is_reported() {
        let e = form(&[&[0, 1], &[-1, 0]]);
        assert!(matches!(graded_dimension_with_budget(&e, 2, 10, 100), Err(Error::BudgetExceeded { .. })));
    }
}

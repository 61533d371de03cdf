//! Multilinear forms: preregularity, cyclic twists, dual forms, automorphisms
//! and form twists, plus the form / twisted-superpotential dictionary.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, MultiIndex, Scalar, SparseTensor};

/// An `m`-linear form on an `n`-dimensional space, stored as its coefficient
/// tensor `f[i_1, .., i_m] = f(v_{i_1}, .., v_{i_m})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MLForm {
    arity: usize,
    dim: usize,
    coeffs: SparseTensor,
}

impl MLForm {
    pub fn new(arity: usize, dim: usize, coeffs: SparseTensor) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidForm(format!("arity must be at least 2, got {arity}")));
        }
        if dim == 0 {
            return Err(Error::InvalidForm("dimension must be positive".into()));
        }
        if coeffs.shape() != vec![dim; arity].as_slice() {
            return Err(Error::InvalidForm(format!(
                "coefficient shape {:?} does not match [{dim}]^{arity}",
                coeffs.shape()
            )));
        }
        if coeffs.is_zero() {
            return Err(Error::InvalidForm("form has no nonzero coefficient".into()));
        }
        Ok(Self { arity, dim, coeffs })
    }

    /// Bilinear form with Gram matrix `e`.
    pub fn from_matrix(e: &Matrix) -> Result<Self> {
        if !e.is_square() {
            return Err(Error::InvalidForm("bilinear form needs a square matrix".into()));
        }
        Self::new(2, e.rows(), SparseTensor::from_matrix(e))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &SparseTensor {
        &self.coeffs
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.coeffs.get(idx)
    }

    /// Gram matrix of a bilinear form.
    pub fn matrix(&self) -> Result<Matrix> {
        if self.arity != 2 {
            return Err(Error::InvalidForm(format!("arity {} form has no Gram matrix", self.arity)));
        }
        self.coeffs.to_matrix()
    }

    fn tail_count(&self) -> usize {
        self.dim.pow(self.arity as u32 - 1)
    }

    /// Flattening with the first slot as rows and the remaining slots
    /// (lexicographic) as columns.
    pub fn first_slot_flattening(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.tail_count());
        for (idx, v) in self.coeffs.entries() {
            m.set(idx[0], flat_index(&idx[1..], self.dim), v.clone());
        }
        m
    }

    /// Flattening with the last slot as columns.
    pub fn last_slot_flattening(&self) -> Matrix {
        let mut m = Matrix::zeros(self.tail_count(), self.dim);
        for (idx, v) in self.coeffs.entries() {
            m.set(flat_index(&idx[..self.arity - 1], self.dim), idx[self.arity - 1], v.clone());
        }
        m
    }
}

/// Lexicographic position of a multi-index with every slot of extent `n`.
pub(crate) fn flat_index(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

pub(crate) fn unflat_index(mut k: usize, n: usize, len: usize) -> MultiIndex {
    let mut out = vec![0; len];
    for slot in (0..len).rev() {
        out[slot] = k % n;
        k /= n;
    }
    out
}

/// Checks that `f(v, -, .., -) = 0` forces `v = 0`.
///
/// On failure the witness is a nonzero `v` with `Σ_i v_i f[i, ..] = 0`.
pub fn check_nondegenerate(f: &MLForm) -> (bool, Option<Vec<Scalar>>) {
    let flat = f.first_slot_flattening();
    if flat.rank() == f.dim {
        return (true, None);
    }
    let witness =
        flat.transpose().kernel().into_iter().next().map(|v| (0..f.dim).map(|i| v.get(i, 0).clone()).collect());
    (false, witness)
}

/// Solves `f[i_1..i_m] = Σ_j ψ[j, i_m] f[j, i_1..i_{m-1}]` for `ψ`.
///
/// Returns `Ok(None)` when the system has no solution or the solution is
/// singular. Nondegeneracy makes the solution unique when it exists.
pub fn find_cyclic_twist(f: &MLForm) -> Result<Option<Matrix>> {
    let (nondeg, _) = check_nondegenerate(f);
    if !nondeg {
        return Err(Error::Degenerate);
    }
    // Column c of ψ solves F1ᵀ x = g_c with g_c[(i_1..i_{m-1})] = f[i_1..i_{m-1}, c],
    // i.e. F1ᵀ ψ = last-slot flattening.
    let lhs = f.first_slot_flattening().transpose();
    let rhs = f.last_slot_flattening();
    let Some(psi) = lhs.solve_many(&rhs)? else {
        return Ok(None);
    };
    if !psi.is_invertible() {
        return Ok(None);
    }
    Ok(Some(psi))
}

/// Verifies the defining identity of a cyclic twist entry by entry.
pub fn is_cyclic_twist(f: &MLForm, psi: &Matrix) -> bool {
    if psi.rows() != f.dim || psi.cols() != f.dim {
        return false;
    }
    let m = f.arity;
    let n = f.dim;
    (0..n.pow(m as u32)).all(|k| {
        let idx = unflat_index(k, n, m);
        let mut rhs = Scalar::zero();
        for j in 0..n {
            let p = psi.get(j, idx[m - 1]);
            if p.is_zero() {
                continue;
            }
            let mut shifted = Vec::with_capacity(m);
            shifted.push(j);
            shifted.extend_from_slice(&idx[..m - 1]);
            rhs += p * f.get(&shifted);
        }
        rhs == f.get(&idx)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreregularityReport {
    pub nondegenerate: bool,
    pub kernel_witness: Option<Vec<Scalar>>,
    pub twist: Option<Matrix>,
    pub twist_invertible: bool,
}

impl PreregularityReport {
    pub fn passes(&self) -> bool {
        self.nondegenerate && self.twist.is_some() && self.twist_invertible
    }
}

pub fn check_preregular(f: &MLForm) -> PreregularityReport {
    let (nondegenerate, kernel_witness) = check_nondegenerate(f);
    if !nondegenerate {
        return PreregularityReport { nondegenerate, kernel_witness, twist: None, twist_invertible: false };
    }
    let twist = find_cyclic_twist(f).ok().flatten();
    let twist_invertible = twist.as_ref().is_some_and(Matrix::is_invertible);
    PreregularityReport { nondegenerate, kernel_witness, twist, twist_invertible }
}

/// Convenience wrapper returning the twist of a preregular form or an error.
pub fn require_preregular(f: &MLForm) -> Result<Matrix> {
    let report = check_preregular(f);
    match report.twist {
        Some(psi) if report.passes() => Ok(psi),
        _ if !report.nondegenerate => Err(Error::NotPreregular("degenerate in the first slot".into())),
        _ => Err(Error::NotPreregular("no invertible cyclic twist".into())),
    }
}

/// A form `f̃` with `Σ_{i_1..i_{m-1}} f̃[i, i_1..i_{m-1}] f[i_1..i_{m-1}, j] = δ_ij`.
///
/// For `m > 2` the system is under-determined; free variables are set to zero
/// so the result is deterministic.
pub fn dual_form(f: &MLForm) -> Result<MLForm> {
    let g = f.last_slot_flattening();
    let n = f.dim;
    let Some(x) = g.transpose().solve_many(&Matrix::identity(n))? else {
        return Err(Error::NoSolution("form is degenerate in its last slot".into()));
    };
    // x is n^(m-1) × n and x[(tail), i] = f̃[i, tail].
    let mut coeffs = SparseTensor::zeros(vec![n; f.arity])?;
    for row in 0..x.rows() {
        let tail = unflat_index(row, n, f.arity - 1);
        for i in 0..n {
            let v = x.get(row, i);
            if !v.is_zero() {
                let mut idx = vec![i];
                idx.extend_from_slice(&tail);
                coeffs.set(idx, v.clone())?;
            }
        }
    }
    MLForm::new(f.arity, n, coeffs)
}

/// Checks the defining contraction of a dual form.
pub fn is_dual_form(f: &MLForm, dual: &MLForm) -> bool {
    let Ok(prod) = dual.first_slot_flattening().mul(&f.last_slot_flattening()) else {
        return false;
    };
    prod.is_identity()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutMembership {
    pub member: bool,
    pub lambda: Option<Scalar>,
}

/// `e ∘ (φ, .., φ)` with every slot transformed by `φ`.
pub fn pullback(e: &MLForm, phi: &Matrix) -> Result<SparseTensor> {
    if phi.rows() != e.dim || phi.cols() != e.dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix on a {}-dimensional space",
            phi.rows(),
            phi.cols(),
            e.dim
        )));
    }
    e.coeffs.transform_slots(&vec![phi.clone(); e.arity])
}

/// Decides whether `e ∘ (φ, .., φ) = λ e` for some nonzero `λ`.
pub fn aut_membership(e: &MLForm, phi: &Matrix) -> Result<AutMembership> {
    if !phi.is_invertible() {
        return Err(Error::Singular);
    }
    let image = pullback(e, phi)?;
    let (idx, v) = e.coeffs.entries().next().expect("forms are nonzero");
    let lambda = image.get(idx) / v;
    if lambda.is_zero() || image != e.coeffs.scale(&lambda) {
        return Ok(AutMembership { member: false, lambda: None });
    }
    Ok(AutMembership { member: true, lambda: Some(lambda) })
}

/// The twisted form `e^φ[i_1..i_m] = Σ e[i_1, l_2..l_m] (φ⁻¹)[l_2, i_2] ⋯ (φ^{-(m-1)})[l_m, i_m]`.
pub fn twist_form(e: &MLForm, phi: &Matrix) -> Result<MLForm> {
    if phi.rows() != e.dim || !phi.is_square() {
        return Err(Error::DimensionMismatch("twist matrix must match the form dimension".into()));
    }
    let inv = phi.inverse()?;
    let mut mats = Vec::with_capacity(e.arity);
    let mut power = Matrix::identity(e.dim);
    for _ in 0..e.arity {
        mats.push(power.clone());
        power = power.mul(&inv)?;
    }
    MLForm::new(e.arity, e.dim, e.coeffs.transform_slots(&mats)?)
}

/// Checks `(ψ ⊗ id^{m-1}) c(s) = s` where `c` moves the last tensor slot to the front.
pub fn superpotential_check(s: &SparseTensor, psi: &Matrix) -> Result<bool> {
    let m = s.order();
    if m == 0 || s.shape().iter().any(|&d| d != s.shape()[0]) {
        return Err(Error::ShapeMismatch(format!("{:?} is not of the form [n]^m", s.shape())));
    }
    let n = s.shape()[0];
    if psi.rows() != n || psi.cols() != n {
        return Err(Error::ShapeMismatch(format!("twist must be {n}x{n}")));
    }
    let rotated = s.rotate_last_to_front();
    let mut mats = vec![Matrix::identity(n); m];
    // transform_slots contracts on the matrix row index; ψ acts on vectors by
    // (ψ v)_i = Σ_j ψ[i, j] v_j, so pass its transpose.
    mats[0] = psi.transpose();
    Ok(rotated.transform_slots(&mats)? == *s)
}

/// The twisted superpotential attached to a preregular form, with the twist it
/// satisfies on the tensor side (the inverse transpose of the form's twist).
pub fn form_to_superpotential(f: &MLForm) -> Result<(SparseTensor, Matrix)> {
    let psi = require_preregular(f)?;
    Ok((f.coeffs.clone(), psi.transpose().inverse()?))
}

/// Inverse direction of [`form_to_superpotential`].
pub fn superpotential_to_form(s: &SparseTensor, psi: &Matrix) -> Result<(MLForm, Matrix)> {
    if !superpotential_check(s, psi)? {
        return Err(Error::NotPreregular("tensor is not a twisted superpotential for this twist".into()));
    }
    let n = s.shape()[0];
    let f = MLForm::new(s.order(), n, s.clone())?;
    Ok((f, psi.transpose().inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    fn e_antisym() -> MLForm {
        MLForm::from_matrix(&Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap()
    }

    fn scalar_cubic(c: i64) -> MLForm {
        MLForm::new(3, 1, SparseTensor::from_entries(vec![1, 1, 1], [(vec![0, 0, 0], int(c))]).unwrap()).unwrap()
    }

    #[test]
    fn nondegeneracy_examples() {
        assert_eq!(check_nondegenerate(&e_antisym()), (true, None));
        let zero_row = MLForm::from_matrix(&Matrix::from_i64(&[&[0, 0], &[1, 1]])).unwrap();
        let (ok, w) = check_nondegenerate(&zero_row);
        assert!(!ok);
        assert_eq!(w.unwrap(), vec![int(1), int(0)]);
        assert!(check_nondegenerate(&scalar_cubic(1)).0);
    }

    #[test]
    fn twist_examples() {
        assert_eq!(find_cyclic_twist(&e_antisym()).unwrap(), Some(Matrix::identity(2).scale(&int(-1))));
        let sym = MLForm::from_matrix(&Matrix::from_i64(&[&[2, 1], &[1, 3]])).unwrap();
        assert_eq!(find_cyclic_twist(&sym).unwrap(), Some(Matrix::identity(2)));
        assert_eq!(find_cyclic_twist(&scalar_cubic(1)).unwrap(), Some(Matrix::identity(1)));
    }

    #[test]
    fn twist_requires_nondegeneracy() {
        let sing = MLForm::from_matrix(&Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(find_cyclic_twist(&sing), Err(Error::Degenerate));
    }

    #[test]
    fn singular_form_fails_with_kernel_witness() {
        let sing = MLForm::from_matrix(&Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        let rep = check_preregular(&sing);
        assert!(!rep.passes());
        assert_eq!(rep.kernel_witness, Some(vec![int(0), int(1)]));
    }

    #[test]
    fn dual_examples() {
        let id = MLForm::from_matrix(&Matrix::identity(2)).unwrap();
        assert_eq!(dual_form(&id).unwrap(), id);
        let d = dual_form(&e_antisym()).unwrap();
        assert_eq!(d.matrix().unwrap(), Matrix::from_i64(&[&[0, -1], &[1, 0]]));
        assert!(is_dual_form(&e_antisym(), &d));
        let d = dual_form(&scalar_cubic(2)).unwrap();
        assert_eq!(d.get(&[0, 0, 0]), frac(1, 2));
    }

    #[test]
    fn aut_examples() {
        let e = e_antisym();
        assert_eq!(
            aut_membership(&e, &Matrix::identity(2)).unwrap(),
            AutMembership { member: true, lambda: Some(int(1)) }
        );
        let r = aut_membership(&e, &Matrix::diag(&[int(2), int(3)])).unwrap();
        assert_eq!(r.lambda, Some(int(6)));
        let id = MLForm::from_matrix(&Matrix::identity(2)).unwrap();
        let r = aut_membership(&id, &Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        assert!(!r.member);
        assert_eq!(aut_membership(&e, &Matrix::from_i64(&[&[1, 1], &[1, 1]])), Err(Error::Singular));
    }

    #[test]
    fn twist_form_examples() {
        let e = e_antisym();
        assert_eq!(twist_form(&e, &Matrix::identity(2)).unwrap(), e);
        let phi = Matrix::from_i64(&[&[1, 2], &[3, 7]]);
        let t = twist_form(&e, &phi).unwrap();
        assert_eq!(t.matrix().unwrap(), e.matrix().unwrap().mul(&phi.inverse().unwrap()).unwrap());
        let t = twist_form(&scalar_cubic(1), &Matrix::diag(&[int(2)])).unwrap();
        assert_eq!(t.get(&[0, 0, 0]), frac(1, 8));
    }

    #[test]
    fn superpotential_examples() {
        let s = SparseTensor::from_matrix(&Matrix::from_i64(&[&[0, 1], &[-1, 0]]));
        assert!(superpotential_check(&s, &Matrix::identity(2).scale(&int(-1))).unwrap());
        let cube = SparseTensor::from_entries(vec![1, 1, 1], [(vec![0, 0, 0], int(1))]).unwrap();
        assert!(superpotential_check(&cube, &Matrix::identity(1)).unwrap());
        let s = SparseTensor::from_matrix(&Matrix::from_i64(&[&[1, 1], &[0, 0]]));
        assert!(!superpotential_check(&s, &Matrix::identity(2)).unwrap());
    }

    #[test]
    fn flat_index_round_trip() {
        for k in 0..27 {
            assert_eq!(flat_index(&unflat_index(k, 3, 3), 3), k);
        }
    }
}

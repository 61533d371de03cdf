use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// Zero-based multi-index. The JSON layer converts to and from 1-based indices.
pub type MultiIndex = Vec<usize>;

/// Finitely supported tensor with exact entries; only nonzero values are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseTensor {
    shape: Vec<usize>,
    entries: BTreeMap<MultiIndex, Scalar>,
}

impl SparseTensor {
    pub fn zeros(shape: Vec<usize>) -> Result<Self> {
        if shape.contains(&0) {
            return Err(Error::ShapeMismatch(format!("shape {shape:?} has a zero extent")));
        }
        Ok(Self { shape, entries: BTreeMap::new() })
    }

    pub fn from_entries(shape: Vec<usize>, entries: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Result<Self> {
        let mut t = Self::zeros(shape)?;
        for (idx, v) in entries {
            t.add_at(idx, &v)?;
        }
        Ok(t)
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    entries.insert(vec![i, j], v.clone());
                }
            }
        }
        Self { shape: vec![m.rows(), m.cols()], entries }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        if self.shape.len() != 2 {
            return Err(Error::ShapeMismatch(format!("order-{} tensor is not a matrix", self.shape.len())));
        }
        Ok(Matrix::from_fn(self.shape[0], self.shape[1], |i, j| self.get(&[i, j])))
    }

    /// The order-2 identity tensor.
    pub fn identity(n: usize) -> Self {
        Self::from_matrix(&Matrix::identity(n))
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.entries.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.shape.len() || idx.iter().zip(&self.shape).any(|(i, d)| i >= d) {
            return Err(Error::ShapeMismatch(format!("index {idx:?} outside shape {:?}", self.shape)));
        }
        Ok(())
    }

    pub fn set(&mut self, idx: MultiIndex, v: Scalar) -> Result<()> {
        self.check_index(&idx)?;
        if v.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, v);
        }
        Ok(())
    }

    pub fn add_at(&mut self, idx: MultiIndex, v: &Scalar) -> Result<()> {
        self.check_index(&idx)?;
        if v.is_zero() {
            return Ok(());
        }
        let sum = self.get(&idx) + v;
        if sum.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, sum);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self { shape: self.shape.clone(), entries: BTreeMap::new() };
        }
        Self { shape: self.shape.clone(), entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", self.shape, other.shape)));
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_at(k.clone(), v)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Cyclic shift moving the last slot to the front: `out[i_m, i_1, .., i_{m-1}] = self[i_1, .., i_m]`.
    pub fn rotate_last_to_front(&self) -> Self {
        let mut shape = self.shape.clone();
        shape.rotate_right(1);
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| {
                let mut k = k.clone();
                k.rotate_right(1);
                (k, v.clone())
            })
            .collect();
        Self { shape, entries }
    }

    /// Applies `mats[k]` to slot `k` by contracting on the matrix row index:
    /// `out[j_1..j_m] = Σ self[i_1..i_m] · mats[0][i_1, j_1] ⋯ mats[m-1][i_m, j_m]`.
    pub fn transform_slots(&self, mats: &[Matrix]) -> Result<Self> {
        if mats.len() != self.order() {
            return Err(Error::ShapeMismatch(format!("{} matrices for an order-{} tensor", mats.len(), self.order())));
        }
        // Contracting slot 0 each time moves it to the back, so after `order`
        // steps the slots are back in their original positions.
        let mut cur = self.clone();
        for m in mats {
            cur = contract(&cur, &[0], &SparseTensor::from_matrix(m), &[0])?;
        }
        Ok(cur)
    }
}

/// Sums over matched slot pairs `(slots[i], slots2[i])`.
///
/// The result carries the uncontracted slots of `t` in order, followed by the
/// uncontracted slots of `s`.
pub fn contract(t: &SparseTensor, slots: &[usize], s: &SparseTensor, slots2: &[usize]) -> Result<SparseTensor> {
    if slots.len() != slots2.len() {
        return Err(Error::ShapeMismatch("contracted slot lists differ in length".into()));
    }
    let check_distinct = |sl: &[usize], order: usize| -> Result<()> {
        for (i, &a) in sl.iter().enumerate() {
            if a >= order || sl[..i].contains(&a) {
                return Err(Error::ShapeMismatch(format!("bad slot list {sl:?}")));
            }
        }
        Ok(())
    };
    check_distinct(slots, t.order())?;
    check_distinct(slots2, s.order())?;
    for (&a, &b) in slots.iter().zip(slots2) {
        if t.shape[a] != s.shape[b] {
            return Err(Error::ShapeMismatch(format!(
                "slot {a} has extent {} but slot {b} has extent {}",
                t.shape[a], s.shape[b]
            )));
        }
    }
    let t_rest: Vec<usize> = (0..t.order()).filter(|i| !slots.contains(i)).collect();
    let s_rest: Vec<usize> = (0..s.order()).filter(|i| !slots2.contains(i)).collect();
    let shape: Vec<usize> = t_rest.iter().map(|&i| t.shape[i]).chain(s_rest.iter().map(|&i| s.shape[i])).collect();

    let mut by_key: HashMap<Vec<usize>, Vec<(Vec<usize>, &Scalar)>> = HashMap::new();
    for (idx, v) in &s.entries {
        let key: Vec<usize> = slots2.iter().map(|&i| idx[i]).collect();
        let rest: Vec<usize> = s_rest.iter().map(|&i| idx[i]).collect();
        by_key.entry(key).or_default().push((rest, v));
    }

    let mut acc: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    for (idx, v) in &t.entries {
        let key: Vec<usize> = slots.iter().map(|&i| idx[i]).collect();
        let Some(matches) = by_key.get(&key) else { continue };
        let head: Vec<usize> = t_rest.iter().map(|&i| idx[i]).collect();
        for (rest, w) in matches {
            let mut out_idx = head.clone();
            out_idx.extend_from_slice(rest);
            *acc.entry(out_idx).or_insert_with(Scalar::zero) += v * *w;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(SparseTensor { shape, entries: acc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn inverse_pair_contracts_to_identity() {
        let e = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let t = SparseTensor::from_matrix(&e);
        let ti = SparseTensor::from_matrix(&e.inverse().unwrap());
        let out = contract(&t, &[1], &ti, &[0]).unwrap();
        assert_eq!(out, SparseTensor::identity(2));
    }

    #[test]
    fn rank_one_against_covector() {
        let w = [int(3), int(-1), int(5)];
        let vw = SparseTensor::from_entries(
            vec![2, 3],
            (0..2).flat_map(|i| (0..3).map(move |j| (vec![i, j], int([1, 2][i] * [3, -1, 5][j])))),
        )
        .unwrap();
        let cov = SparseTensor::from_entries(vec![2], [(vec![0], int(4)), (vec![1], int(1))]).unwrap();
        let out = contract(&vw, &[0], &cov, &[0]).unwrap();
        // <cov, v> = 4 + 2 = 6
        let expect = SparseTensor::from_entries(vec![3], (0..3).map(|j| (vec![j], int(6) * w[j].clone()))).unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn antisymmetric_form_under_diag() {
        let e = SparseTensor::from_matrix(&Matrix::from_i64(&[&[0, 1], &[-1, 0]]));
        let phi = Matrix::diag(&[int(2), int(3)]);
        let out = e.transform_slots(&[phi.clone(), phi]).unwrap();
        assert_eq!(out, e.scale(&int(6)));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = SparseTensor::identity(2);
        let b = SparseTensor::identity(3);
        assert!(matches!(contract(&a, &[1], &b, &[0]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn full_contraction_gives_scalar() {
        let a = SparseTensor::identity(3);
        let out = contract(&a, &[0, 1], &a, &[0, 1]).unwrap();
        assert_eq!(out.shape(), &[] as &[usize]);
        assert_eq!(out.get(&[]), int(3));
    }
}

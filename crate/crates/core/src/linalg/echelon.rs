use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Scalar;

/// Incremental sparse row-echelon form keyed by pivot column.
///
/// Rows are inserted one at a time and reduced against the stored pivots;
/// stored rows are normalized so the pivot entry is one.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots (smallest column first).
    pub fn reduce(&self, mut row: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        while let Some((c, v)) = row.pop_first() {
            if let Some(p) = self.pivots.get(&c) {
                for (k, w) in p.iter().skip(1) {
                    let e = row.entry(*k).or_insert_with(Scalar::zero);
                    *e -= &v * w;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            } else {
                out.insert(c, v);
            }
        }
        out
    }

    /// Inserts a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, Scalar>) -> bool {
        let mut red = self.reduce(row);
        let Some((&c, lead)) = red.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        if !inv.is_one() {
            for v in red.values_mut() {
                *v *= &inv;
            }
        }
        red.retain(|_, v| !v.is_zero());
        self.pivots.insert(c, red);
        true
    }
}

//! The cogroupoid of quantum symmetry groups of preregular forms: the
//! presentations `H(e, f)`, their structure maps, the axioms they satisfy and
//! the 2-cocycle twists relating `H(e)` and `H(e^φ)`.

mod axioms;
mod twisting;
mod uqg;

pub use axioms::{
    verify_antipode, verify_cocategory, verify_lemma_identities, AntipodeReport, AxiomCheck, AxiomReport, EntryCheck,
};
pub use twisting::{
    build_twisting_pair, twisting_maps, verify_cocycle_connectivity, verify_twisting_conditions, ConnectivityReport,
    TwistingConditionsReport, TwistingPairReport,
};
pub use uqg::{
    antipode_between, build_antipode, build_counit, build_delta, build_presentation, counit_on, delta_between,
    AntipodeVariant, UQGPresentation,
};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ncalg::NCPoly;

/// A dense matrix with noncommutative polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<NCPoly>,
}

impl PolyMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> NCPoly) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        Self { rows, cols, data }
    }

    /// Constant entries.
    pub fn scalars(m: &Matrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| NCPoly::constant(m.get(i, j).clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(NCPoly::zero(), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
        }))
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `left · X · right` entrywise.
    pub fn conjugate(&self, left: &NCPoly, right: &NCPoly) -> PolyMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| &(left * self.get(i, j)) * right)
    }

    /// `X - I` for square `X`.
    pub fn minus_identity(&self) -> PolyMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| {
            let mut p = self.get(i, j).clone();
            if i == j {
                p = &p - &NCPoly::one();
            }
            p
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &NCPoly)> {
        self.data.iter().enumerate().map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(NCPoly::is_zero)
    }
}

//! Graded module families over `H₂(e, f)` and nonvanishing certificates.
//!
//! Each `M_d` is a copy of `V`; `a_ij: M_d → M_{d+1}` acts as the scalar
//! `A^(d)_ij`, `b_ij: M_d → M_{d-1}` as `B^(d)_ij`, and `D^{±1}` as the
//! identity `M_d → M_{d±2}`. Families are stored on a finite window of degrees.

mod certificate;

pub use certificate::{nonvanishing_certificate, NonvanishingCertificate, DEFAULT_WINDOW, EQUIVALENCE_NOTE};

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::ncalg::{Falsifier, GenClass, GenSymbol, NCPoly, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleFamily {
    e: Matrix,
    f: Matrix,
    lo: i64,
    hi: i64,
    a: BTreeMap<i64, Matrix>,
    b: BTreeMap<i64, Matrix>,
}

/// Builds `A^(d)` on `[lo, hi]` and `B^(d)` on `[lo+1, hi]` from `A^(0) = seed`:
/// `A^(d+1) = E⁻ᵀ (A^(d))⁻ᵀ Fᵀ`, `A^(d-1) = E⁻¹ (A^(d))⁻ᵀ F`, `B^(d+1) = (A^(d))⁻¹`.
pub fn extend_module(e: &Matrix, f: &Matrix, seed: &Matrix, window: (i64, i64)) -> Result<ModuleFamily> {
    let n = e.rows();
    for (name, m) in [("E", e), ("F", f), ("seed", seed)] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
        }
    }
    let (lo, hi) = window;
    if !(lo <= 0 && 0 <= hi) {
        return Err(Error::OutOfRange(format!("window [{lo}, {hi}] must contain 0")));
    }
    let e_inv = e.inverse()?;
    let e_inv_t = e_inv.transpose();
    let f_t = f.transpose();
    let mut a = BTreeMap::new();
    a.insert(0, seed.inverse().map(|_| seed.clone())?);
    for d in 0..hi {
        let next = e_inv_t.mul(&a[&d].inverse()?.transpose())?.mul(&f_t)?;
        a.insert(d + 1, next);
    }
    for d in (lo + 1..=0).rev() {
        let prev = e_inv.mul(&a[&d].inverse()?.transpose())?.mul(f)?;
        a.insert(d - 1, prev);
    }
    let b = (lo..hi).map(|d| Ok((d + 1, a[&d].inverse()?))).collect::<Result<_>>()?;
    Ok(ModuleFamily { e: e.clone(), f: f.clone(), lo, hi, a, b })
}

/// One of the three identity families at one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleIdentity {
    pub identity: &'static str,
    pub degree: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleReport {
    pub identities: Vec<ModuleIdentity>,
}

impl ModuleReport {
    pub fn passes(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ModuleIdentity> {
        self.identities.iter().filter(|i| !i.holds)
    }
}

pub const IDENTITY_A: &str = "A(d+1)^T E A(d) = F";
pub const IDENTITY_B: &str = "B(d)^T F^T B(d+1) = E^T";
pub const IDENTITY_AB: &str = "A(d) B(d+1) = I";

/// Re-checks the three identity families wherever both sides are defined.
pub fn verify_module(fam: &ModuleFamily) -> ModuleReport {
    let mut identities = Vec::new();
    let e_t = fam.e.transpose();
    let f_t = fam.f.transpose();
    let n = fam.dim();
    let eq = |lhs: Result<Matrix>, rhs: &Matrix| lhs.map(|m| &m == rhs).unwrap_or(false);
    for d in fam.lo..fam.hi {
        let (ad, an) = (&fam.a[&d], &fam.a[&(d + 1)]);
        let lhs = an.transpose().mul(&fam.e).and_then(|m| m.mul(ad));
        identities.push(ModuleIdentity { identity: IDENTITY_A, degree: d, holds: eq(lhs, &fam.f) });
        if let (Some(bd), Some(bn)) = (fam.b.get(&d), fam.b.get(&(d + 1))) {
            let lhs = bd.transpose().mul(&f_t).and_then(|m| m.mul(bn));
            identities.push(ModuleIdentity { identity: IDENTITY_B, degree: d, holds: eq(lhs, &e_t) });
        }
        let lhs = ad.mul(&fam.b[&(d + 1)]);
        identities.push(ModuleIdentity { identity: IDENTITY_AB, degree: d, holds: eq(lhs, &Matrix::identity(n)) });
    }
    ModuleReport { identities }
}

impl ModuleFamily {
    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn dim(&self) -> usize {
        self.e.rows()
    }

    pub fn seed(&self) -> &Matrix {
        &self.a[&0]
    }

    pub fn a(&self, d: i64) -> Option<&Matrix> {
        self.a.get(&d)
    }

    pub fn b(&self, d: i64) -> Option<&Matrix> {
        self.b.get(&d)
    }

    pub fn a_maps(&self) -> &BTreeMap<i64, Matrix> {
        &self.a
    }

    pub fn b_maps(&self) -> &BTreeMap<i64, Matrix> {
        &self.b
    }

    /// Replaces `A^(d)`; used to build deliberately inconsistent families.
    pub fn with_a(mut self, d: i64, m: Matrix) -> Self {
        self.a.insert(d, m);
        self
    }

    fn contains(&self, d: i64) -> bool {
        (self.lo..=self.hi).contains(&d)
    }

    /// Scalar by which `w` acts from `M_d`, and the target degree.
    fn word_scalar(&self, w: &Word, d: i64) -> Result<Scalar> {
        let n = self.dim();
        let mut t = d;
        let mut acc = Scalar::one();
        for s in w.symbols().iter().rev() {
            if s.factor > 1 {
                return Err(Error::AlphabetMismatch(s.to_string()));
            }
            let (i, j) = (s.row(), s.col());
            let (entry, next) = match s.class {
                GenClass::A => (self.a.get(&t), t + 1),
                GenClass::B => (self.b.get(&t), t - 1),
                GenClass::Dpos => (None, t + 2),
                GenClass::Dneg => (None, t - 2),
                GenClass::X => return Err(Error::AlphabetMismatch(s.to_string())),
            };
            if !self.contains(next) {
                return Err(Error::OutOfWindow(next));
            }
            match s.class {
                GenClass::A | GenClass::B => {
                    if i >= n || j >= n {
                        return Err(Error::AlphabetMismatch(s.to_string()));
                    }
                    let m = entry.ok_or(Error::OutOfWindow(t))?;
                    acc *= m.get(i, j);
                }
                _ => {}
            }
            t = next;
        }
        Ok(acc)
    }

    /// The scalar action of a homogeneous `p` from `M_d`.
    pub fn evaluate_scalar(&self, p: &NCPoly, d: i64) -> Result<Scalar> {
        homogeneous_degree(p)?;
        let mut total = Scalar::zero();
        for (w, c) in p.terms() {
            total += c * self.word_scalar(w, d)?;
        }
        Ok(total)
    }

    /// The composite `M_d → M_{d + deg p}` as a matrix.
    pub fn evaluate(&self, p: &NCPoly, d: i64) -> Result<Matrix> {
        let s = self.evaluate_scalar(p, d)?;
        Ok(Matrix::identity(self.dim()).scale(&s))
    }
}

/// `evaluate` as a free function.
pub fn evaluate(p: &NCPoly, fam: &ModuleFamily, d: i64) -> Result<Matrix> {
    fam.evaluate(p, d)
}

fn symbol_degree(s: &GenSymbol) -> i64 {
    match s.class {
        GenClass::A => 1,
        GenClass::B => -1,
        GenClass::Dpos => 2,
        GenClass::Dneg => -2,
        GenClass::X => 0,
    }
}

fn word_degree(w: &Word) -> i64 {
    w.symbols().iter().map(symbol_degree).sum()
}

/// Degree of `p` under the module grading, `None` for zero.
fn homogeneous_degree(p: &NCPoly) -> Result<Option<i64>> {
    let mut degrees = p.terms().map(|(w, _)| word_degree(w));
    let first = degrees.next();
    match first {
        Some(d) if degrees.any(|x| x != d) => Err(Error::NotHomogeneous(p.to_string())),
        _ => Ok(first),
    }
}

impl Falsifier for ModuleFamily {
    fn name(&self) -> String {
        format!("module family on [{}, {}] with seed {}", self.lo, self.hi, self.seed())
    }

    /// Evaluates every homogeneous part at every degree where the evaluation
    /// stays inside the window.
    fn refutes(&self, target: &NCPoly) -> Option<bool> {
        let n = self.dim();
        let applies = target.symbols().all(|s| {
            s.factor <= 1
                && match s.class {
                    GenClass::A | GenClass::B => s.row() < n && s.col() < n,
                    GenClass::Dpos | GenClass::Dneg => true,
                    GenClass::X => false,
                }
        });
        if !applies {
            return None;
        }
        let mut parts: BTreeMap<i64, NCPoly> = BTreeMap::new();
        for (w, c) in target.terms() {
            parts.entry(word_degree(w)).or_default().add_term(w.clone(), c.clone());
        }
        let mut evaluated = false;
        for part in parts.values() {
            for d in self.lo..=self.hi {
                if let Ok(v) = self.evaluate_scalar(part, d) {
                    if !v.is_zero() {
                        return Some(true);
                    }
                    evaluated = true;
                }
            }
        }
        evaluated.then_some(false)
    }
}

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{extend_module, verify_module, ModuleFamily, IDENTITY_A, IDENTITY_AB, IDENTITY_B};
use crate::cogroupoid::build_presentation;
use crate::error::{Error, Result};
use crate::forms::MLForm;
use crate::linalg::Matrix;
use crate::ncalg::NCPoly;
use crate::random::random_invertible;

pub const DEFAULT_WINDOW: (i64, i64) = (-5, 5);

pub const EQUIVALENCE_NOTE: &str = "H_2(e,f) is nonzero; the comodule categories of the quantum symmetry \
groups of A(e,2) and A(f,2) are monoidally equivalent provided both algebras are AS-regular, which is \
asserted by the user and not checked here";

/// Evidence that `1 ≠ 0` in `H₂(e, f)`: a graded module on a finite window
/// whose matrices satisfy every relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonvanishingCertificate {
    pub e: MLForm,
    pub f: MLForm,
    pub seed: Matrix,
    /// RNG seed used to draw `seed`, when it was drawn.
    pub rng_seed: Option<u64>,
    pub window: (i64, i64),
    pub checks: Vec<String>,
    pub verdict: String,
    pub equivalence_note: String,
}

fn check_lines(fam: &ModuleFamily, relations: &[NCPoly]) -> Result<Vec<String>> {
    let report = verify_module(fam);
    if let Some(bad) = report.failures().next() {
        return Err(Error::NoSolution(format!("{} fails at degree {}", bad.identity, bad.degree)));
    }
    let (lo, hi) = fam.window();
    let mut lines = Vec::new();
    for name in [IDENTITY_A, IDENTITY_B, IDENTITY_AB] {
        let degrees: Vec<i64> = report.identities.iter().filter(|i| i.identity == name).map(|i| i.degree).collect();
        if let (Some(first), Some(last)) = (degrees.first(), degrees.last()) {
            lines.push(format!("{name} for d in [{first}, {last}]"));
        }
    }
    let mut evaluations = 0;
    for (k, r) in relations.iter().enumerate() {
        for d in lo..=hi {
            match fam.evaluate_scalar(r, d) {
                Ok(v) if v.is_zero() => evaluations += 1,
                Ok(v) => return Err(Error::NoSolution(format!("relation {} evaluates to {v} at degree {d}", k + 1))),
                Err(Error::OutOfWindow(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    lines.push(format!("{} relations vanish at {evaluations} in-window (relation, degree) pairs", relations.len()));
    if fam.evaluate(&NCPoly::one(), 0)? != Matrix::identity(fam.dim()) || fam.dim() == 0 {
        return Err(Error::NoSolution("the module is zero".into()));
    }
    lines.push(format!("unit acts as the identity on M_0 of dimension {}", fam.dim()));
    Ok(lines)
}

fn family_for(e: &MLForm, f: &MLForm, seed: &Matrix, window: (i64, i64)) -> Result<ModuleFamily> {
    if e.arity() != 2 || f.arity() != 2 {
        return Err(Error::Unsupported("module families are only constructed for bilinear forms".into()));
    }
    if e.dim() != f.dim() {
        return Err(Error::DimensionMismatch(format!("forms on spaces of dimension {} and {}", e.dim(), f.dim())));
    }
    extend_module(&e.matrix()?, &f.matrix()?, seed, window)
}

/// Builds and checks a module family for `H₂(e, f)`; with no `seed` one is
/// drawn from `rng_seed`.
pub fn nonvanishing_certificate(
    e: &MLForm,
    f: &MLForm,
    seed: Option<&Matrix>,
    rng_seed: u64,
) -> Result<NonvanishingCertificate> {
    let h = build_presentation(e, f)?;
    let (seed, rng_seed) = match seed {
        Some(s) => (s.clone(), None),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            (random_invertible(e.dim(), 3, &mut rng), Some(rng_seed))
        }
    };
    let fam = family_for(e, f, &seed, DEFAULT_WINDOW)?;
    let checks = check_lines(&fam, h.relations())?;
    Ok(NonvanishingCertificate {
        e: e.clone(),
        f: f.clone(),
        seed,
        rng_seed,
        window: DEFAULT_WINDOW,
        checks,
        verdict: "nonzero".into(),
        equivalence_note: EQUIVALENCE_NOTE.into(),
    })
}

impl NonvanishingCertificate {
    /// Rebuilds the family from the recorded seed and re-runs every check.
    pub fn verify(&self) -> Result<()> {
        if self.verdict != "nonzero" {
            return Err(Error::InvalidForm(format!("unexpected verdict {:?}", self.verdict)));
        }
        let h = build_presentation(&self.e, &self.f)?;
        if let Some(s) = self.rng_seed {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            if random_invertible(self.e.dim(), 3, &mut rng) != self.seed {
                return Err(Error::NoSolution("seed does not match the recorded RNG seed".into()));
            }
        }
        let fam = family_for(&self.e, &self.f, &self.seed, self.window)?;
        let checks = check_lines(&fam, h.relations())?;
        if checks != self.checks {
            return Err(Error::NoSolution("recorded checks differ from the recomputed ones".into()));
        }
        Ok(())
    }

    pub fn family(&self) -> Result<ModuleFamily> {
        family_for(&self.e, &self.f, &self.seed, self.window)
    }
}

//! Seeded generators for random test instances.

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::forms::{check_preregular, unflat_index, MLForm};
use crate::linalg::{int, Matrix, Scalar, SparseTensor};

const MAX_TRIES: usize = 1000;

/// Uniform entries in `-bound..=bound`, rejecting singular draws.
pub fn random_invertible<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-bound..=bound)));
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random preregular `m`-linear form on an `n`-dimensional space.
///
/// For `m = 2` this is a random invertible Gram matrix. For `m > 2` a random
/// involution `ψ` is drawn and a random tensor is averaged over the cyclic
/// group generated by the twist operator, which makes `ψ` a cyclic twist; the
/// draw is repeated until the result is nondegenerate.
pub fn random_preregular<R: Rng>(m: usize, n: usize, rng: &mut R) -> Result<MLForm> {
    if m == 2 {
        return MLForm::from_matrix(&random_invertible(n, 3, rng));
    }
    for _ in 0..MAX_TRIES {
        let g = random_invertible(n, 2, rng);
        let signs: Vec<Scalar> = (0..n).map(|_| int(if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
        let psi = g.mul(&Matrix::diag(&signs))?.mul(&g.inverse()?)?;
        let mut t = SparseTensor::zeros(vec![n; m])?;
        let total = n.pow(m as u32);
        for k in 0..total {
            let v = rng.gen_range(-2..=2);
            if v != 0 {
                t.set(unflat_index(k, n, m), int(v))?;
            }
        }
        let mut sum = t.clone();
        let mut cur = t;
        for _ in 1..2 * m {
            cur = twist_step(&cur, &psi)?;
            sum = sum.add(&cur)?;
        }
        if sum.is_zero() {
            continue;
        }
        let f = MLForm::new(m, n, sum)?;
        if check_preregular(&f).passes() {
            return Ok(f);
        }
    }
    Err(Error::NoSolution(format!("no preregular {m}-form on dimension {n} after {MAX_TRIES} draws")))
}

/// `(T t)[i_1..i_m] = Σ_j ψ[j, i_m] t[j, i_1..i_{m-1}]`; fixed points of `T`
/// are exactly the forms with cyclic twist `ψ`.
fn twist_step(t: &SparseTensor, psi: &Matrix) -> Result<SparseTensor> {
    let m = t.order();
    let n = t.shape()[0];
    let mut out = SparseTensor::zeros(vec![n; m])?;
    for (idx, v) in t.entries() {
        // idx = (j, i_1..i_{m-1}); contributes to (i_1..i_{m-1}, i_m) with weight ψ[j, i_m].
        for im in 0..n {
            let w = psi.get(idx[0], im);
            if !w.is_zero() {
                let mut target: Vec<usize> = idx[1..].to_vec();
                target.push(im);
                out.add_at(target, &(v * w))?;
            }
        }
    }
    Ok(out)
}

//! Test-side generators and linear-algebra oracles that do not go through the lattice code.
#![allow(dead_code)]

use nalgebra::{SymmetricEigen, SVD};
use qlogic::hilbert::{random_subspace_with, random_unitary};
use qlogic::{CMat, HilbertLattice, OrthoLattice, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn projector(s: &Subspace) -> CMat {
    s.basis() * s.basis().adjoint()
}

pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Vec::new();
    }
    SVD::new(m.clone(), false, false).singular_values.iter().copied().collect()
}

pub fn rank(m: &CMat, tol: f64) -> usize {
    singular_values(m).into_iter().filter(|&s| s > tol).count()
}

/// Projector onto the column space of `m`: eigenvectors of `m mᴴ` whose eigenvalue
/// exceeds `tol²`.
pub fn range_projector(m: &CMat, tol: f64) -> CMat {
    let d = m.nrows();
    let eig = SymmetricEigen::new(m * m.adjoint());
    let mut p = CMat::zeros(d, d);
    for (i, l) in eig.eigenvalues.iter().enumerate() {
        if *l > tol * tol {
            let c = eig.eigenvectors.column(i);
            p += c * c.adjoint();
        }
    }
    p
}

pub fn commutator(p: &CMat, q: &CMat) -> f64 {
    (p * q - q * p).norm()
}

/// Random rank in `1..d`, so never `⊥` or `⊤`.
pub fn proper_subspace(rng: &mut ChaCha8Rng, d: usize) -> Subspace {
    let r = rng.gen_range(1..d);
    random_subspace_with(rng, d, r).unwrap()
}

/// Span of a random nonempty proper subset of the columns of `u`.
pub fn column_subspace(space: &HilbertLattice, rng: &mut ChaCha8Rng, u: &CMat) -> Subspace {
    let d = u.ncols();
    loop {
        let mask: u32 = rng.gen_range(1..(1u32 << d) - 1);
        let cols: Vec<_> = (0..d).filter(|i| mask & (1 << i) != 0).map(|i| u.column(i).into_owned()).collect();
        if !cols.is_empty() {
            return space.span(&cols).unwrap();
        }
    }
}

/// A 3-letter alphabet mixing generic subspaces with ones sharing an eigenbasis, so that
/// both accepted and rejected words occur.
pub fn alphabet(space: &HilbertLattice, seed: u64) -> Vec<Subspace> {
    let mut rng = rng(seed);
    let d = space.dim();
    match seed % 3 {
        0 => (0..3).map(|_| proper_subspace(&mut rng, d)).collect(),
        1 => {
            let u = random_unitary(&mut rng, d);
            (0..3).map(|_| column_subspace(space, &mut rng, &u)).collect()
        }
        _ => {
            let p = proper_subspace(&mut rng, d);
            let q = proper_subspace(&mut rng, d);
            vec![p.clone(), space.ortho(&p).unwrap(), q]
        }
    }
}

/// A pair that is compatible by construction about a third of the time.
pub fn mixed_pair(space: &HilbertLattice, seed: u64) -> (Subspace, Subspace) {
    let mut rng = rng(seed);
    let d = space.dim();
    match seed % 3 {
        0 => (proper_subspace(&mut rng, d), proper_subspace(&mut rng, d)),
        1 => {
            let u = random_unitary(&mut rng, d);
            (column_subspace(space, &mut rng, &u), column_subspace(space, &mut rng, &u))
        }
        _ => {
            let p = proper_subspace(&mut rng, d);
            let r = random_subspace_with(&mut rng, d, 1).unwrap();
            let q = space.join(&p, &r).unwrap();
            (p, q)
        }
    }
}

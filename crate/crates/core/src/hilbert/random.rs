use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{CMat, CVec, Complex64, Subspace, Tolerances};
use crate::{Error, Result};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Orthonormalized columns of a standard complex Gaussian `d × r` matrix.
pub fn random_subspace_with<R: Rng + ?Sized>(rng: &mut R, d: usize, r: usize) -> Result<Subspace> {
    if r > d {
        return Err(Error::DimMismatch { expected: d, found: r });
    }
    if r == 0 {
        return Ok(Subspace::zero(d));
    }
    let m = CMat::from_fn(d, r, |_, _| gaussian(rng));
    let s = Subspace::from_columns(&m, &Tolerances::default());
    if s.dim() != r {
        return Err(Error::Postcondition("random columns were rank deficient"));
    }
    Ok(s)
}

/// Deterministic per `seed`.
pub fn random_subspace(d: usize, r: usize, seed: u64) -> Result<Subspace> {
    random_subspace_with(&mut ChaCha8Rng::seed_from_u64(seed), d, r)
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CVec {
    loop {
        let v = CVec::from_fn(d, |_, _| gaussian(rng));
        let n = v.norm();
        if n > 1e-6 {
            return v.unscale(n);
        }
    }
}

/// A random orthonormal basis of `C^d`, as columns.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMat {
    loop {
        if let Ok(s) = random_subspace_with(rng, d, d) {
            return s.basis().clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::orthonormality_residual;

    #[test]
    fn random_subspaces_are_valid_and_deterministic() {
        let ray = random_subspace(2, 1, 7).unwrap();
        assert_eq!(ray.dim(), 1);
        assert!(orthonormality_residual(ray.basis()) < 1e-12);
        let plane = random_subspace(3, 2, 7).unwrap();
        assert_eq!(plane.dim(), 2);
        assert!(orthonormality_residual(plane.basis()) < 1e-12);
        let again = random_subspace(3, 2, 7).unwrap();
        assert_eq!(plane.basis(), again.basis());
        assert_ne!(plane.basis(), random_subspace(3, 2, 8).unwrap().basis());
        assert!(random_subspace(2, 3, 0).is_err());
    }
}

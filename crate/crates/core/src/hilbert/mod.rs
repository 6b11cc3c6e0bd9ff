//! The lattice `L(C^d)` of subspaces of a finite-dimensional complex Hilbert space.
//!
//! Subspaces carry an orthonormal basis. Equality and order are decided on projectors,
//! never on bases. Rank decisions use [`Tolerances::rank`] relative to the scale of the
//! input columns, with an absolute floor.

mod linalg;
mod random;

use alloc::vec::Vec;

use nalgebra::{ComplexField, SymmetricEigen};

use crate::{Error, OrthoLattice, Result};

pub(crate) use linalg::{orthonormality_residual, sqrt, unit};
pub use random::{random_subspace, random_subspace_with, random_unit_vector, random_unitary};

pub type Complex64 = nalgebra::Complex<f64>;
pub type CMat = nalgebra::DMatrix<Complex64>;
pub type CVec = nalgebra::DVector<Complex64>;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 64;

/// Absolute floor for rank truncation.
pub const RANK_FLOOR: f64 = 1e-12;

/// Numerical thresholds realizing exact lattice statements in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Singular-value threshold, relative to the largest column norm.
    pub rank: f64,
    /// Bound on `‖BᴴB − I‖_F` for a basis to count as orthonormal.
    pub orth: f64,
    /// Eigenvalues within this distance of 0 or 1 are classified as such.
    pub spec: f64,
    /// Projector-distance bound for equality and order.
    pub eq: f64,
    /// Eigenvalues closer than this are grouped into one eigenspace.
    pub degeneracy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: 1e-9,
            orth: 1e-10,
            spec: 1e-7,
            eq: 1e-8,
            degeneracy: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [self.rank, self.orth, self.spec, self.eq, self.degeneracy];
        if all.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::InvalidTolerance("tolerances must be finite and strictly positive"));
        }
        if self.spec >= 0.5 {
            return Err(Error::InvalidTolerance("spectral tolerance must be below 1/2"));
        }
        Ok(())
    }

    /// Sets a tolerance by name (`rank`, `orth`, `spec`, `eq`, `degeneracy`).
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = match name {
            "rank" => &mut self.rank,
            "orth" => &mut self.orth,
            "spec" => &mut self.spec,
            "eq" => &mut self.eq,
            "degeneracy" => &mut self.degeneracy,
            _ => return Err(Error::InvalidTolerance("unknown tolerance name")),
        };
        *slot = value;
        self.validate()
    }

    fn rank_threshold(&self, scale: f64) -> f64 {
        (self.rank * scale).max(RANK_FLOOR)
    }
}

/// A subspace of `C^d`, stored as a `d × r` matrix with orthonormal columns.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: CMat,
}

impl Subspace {
    /// The zero subspace `⊥ = {0}`.
    pub fn zero(d: usize) -> Self {
        Self { basis: CMat::zeros(d, 0) }
    }

    /// The whole space `⊤`.
    pub fn full(d: usize) -> Self {
        Self { basis: CMat::identity(d, d) }
    }

    /// Span of the columns of `cols`; columns need not be orthonormal or independent.
    pub fn from_columns(cols: &CMat, tol: &Tolerances) -> Self {
        let threshold = tol.rank_threshold(linalg::max_column_norm(cols));
        Self { basis: linalg::orthonormalize(cols, threshold, cols.nrows()) }
    }

    /// Span of the given vectors in `C^d`.
    pub fn span(d: usize, vectors: &[CVec], tol: &Tolerances) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimMismatch { expected: d, found: v.len() });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(d));
        }
        Ok(Self::from_columns(&CMat::from_columns(vectors), tol))
    }

    /// The ray spanned by a nonzero vector; `⊥` for the zero vector.
    pub fn ray(v: &CVec) -> Self {
        Self::from_columns(&CMat::from_columns(core::slice::from_ref(v)), &Tolerances::default())
    }

    /// Span of standard basis vectors `e_i` (zero-based indices).
    pub fn coordinate(d: usize, indices: &[usize]) -> Self {
        let cols: Vec<CVec> = indices.iter().map(|&i| unit(d, i)).collect();
        if cols.is_empty() {
            Self::zero(d)
        } else {
            Self::from_columns(&CMat::from_columns(&cols), &Tolerances::default())
        }
    }

    /// Wraps a basis that is already orthonormal.
    pub fn from_orthonormal(basis: CMat, tol: &Tolerances) -> Result<Self> {
        let residual = orthonormality_residual(&basis);
        if residual > tol.orth {
            return Err(Error::Postcondition("basis columns are not orthonormal"));
        }
        Ok(Self { basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn projector(&self) -> CMat {
        &self.basis * self.basis.adjoint()
    }

    /// `Π_p v`.
    pub fn project(&self, v: &CVec) -> CVec {
        &self.basis * (self.basis.adjoint() * v)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }
}

/// Outcome of the spectral compatibility test.
#[derive(Debug, Clone)]
pub struct CompatReport {
    pub compatible: bool,
    /// Eigenvalues of `Π_P ∘ Π_Q|_P`, ascending. Empty when `P = ⊥`.
    pub spectrum: Vec<f64>,
    /// Eigenpair with eigenvalue outside `{0, 1}` closest to 1/2, in ambient coordinates.
    pub witness: Option<(f64, CVec)>,
}

/// `L(C^d)` for a fixed dimension and tolerance set.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertLattice {
    dim: usize,
    tol: Tolerances,
}

impl HilbertLattice {
    pub fn new(dim: usize) -> Result<Self> {
        Self::with_tolerances(dim, Tolerances::default())
    }

    pub fn with_tolerances(dim: usize, tol: Tolerances) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidDimension(dim));
        }
        tol.validate()?;
        Ok(Self { dim, tol })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub(crate) fn check(&self, p: &Subspace) -> Result<()> {
        if p.ambient_dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimMismatch { expected: self.dim, found: p.ambient_dim() })
        }
    }

    pub(crate) fn check_vec(&self, v: &CVec) -> Result<()> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(Error::DimMismatch { expected: self.dim, found: v.len() })
        }
    }

    /// Span of vectors in this space.
    pub fn span(&self, vectors: &[CVec]) -> Result<Subspace> {
        Subspace::span(self.dim, vectors, &self.tol)
    }

    pub fn ray(&self, v: &CVec) -> Result<Subspace> {
        self.span(core::slice::from_ref(v))
    }

    pub fn from_columns(&self, cols: &CMat) -> Result<Subspace> {
        if cols.nrows() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: cols.nrows() });
        }
        Ok(Subspace::from_columns(cols, &self.tol))
    }

    pub fn projector(&self, p: &Subspace) -> Result<CMat> {
        self.check(p)?;
        Ok(p.projector())
    }

    /// `‖Π_p − Π_q‖_F`.
    pub fn projector_distance(&self, p: &Subspace, q: &Subspace) -> Result<f64> {
        self.check(p)?;
        self.check(q)?;
        Ok((p.projector() - q.projector()).norm())
    }

    /// `‖(I − Π_q) Π_p‖_F`, zero exactly when `p ≤ q`.
    pub fn leq_residual(&self, p: &Subspace, q: &Subspace) -> Result<f64> {
        self.check(p)?;
        self.check(q)?;
        let b = p.basis();
        Ok((b - q.basis() * (q.basis().adjoint() * b)).norm())
    }

    /// `‖Π_p Π_q − Π_q Π_p‖_F`.
    pub fn commutator_norm(&self, p: &Subspace, q: &Subspace) -> Result<f64> {
        self.check(p)?;
        self.check(q)?;
        let (pp, qq) = (p.projector(), q.projector());
        Ok((&pp * &qq - &qq * &pp).norm())
    }

    /// Sasaki projection by the lattice formula `q ∧ (p ∨ q⊥)`.
    pub fn sasaki_formula(&self, p: &Subspace, q: &Subspace) -> Result<Subspace> {
        let q_perp = self.ortho(q)?;
        self.meet(q, &self.join(p, &q_perp)?)
    }

    /// Spectral compatibility test on `Bᴴ Π_Q B`, `B` an orthonormal basis of `P`.
    ///
    /// `⊥` is compatible with everything and is reported without a spectral computation.
    pub fn compat_report(&self, p: &Subspace, q: &Subspace) -> Result<CompatReport> {
        self.check(p)?;
        self.check(q)?;
        if p.is_zero() {
            return Ok(CompatReport { compatible: true, spectrum: Vec::new(), witness: None });
        }
        let c = q.basis().adjoint() * p.basis();
        let m = c.adjoint() * c;
        let eig = SymmetricEigen::new(m);
        let mut pairs: Vec<(f64, usize)> = eig.eigenvalues.iter().copied().zip(0..).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

        let tau = self.tol.spec;
        let mut witness: Option<(f64, usize)> = None;
        for &(lambda, idx) in &pairs {
            let dist = lambda.abs().min((1.0 - lambda).abs());
            if dist >= 0.5 * tau && dist < 2.0 * tau {
                return Err(Error::AmbiguousSpectrum { eigenvalue: lambda });
            }
            if dist >= 2.0 * tau {
                let better = witness.is_none_or(|(w, _)| (lambda - 0.5).abs() < (w - 0.5).abs());
                if better {
                    witness = Some((lambda, idx));
                }
            }
        }
        let witness = witness.map(|(lambda, idx)| {
            let mut u = p.basis() * eig.eigenvectors.column(idx);
            let n = u.norm();
            u.unscale_mut(n);
            (lambda, u)
        });
        Ok(CompatReport {
            compatible: witness.is_none(),
            spectrum: pairs.iter().map(|p| p.0).collect(),
            witness,
        })
    }
}

impl OrthoLattice for HilbertLattice {
    type Elem = Subspace;

    fn bottom(&self) -> Subspace {
        Subspace::zero(self.dim)
    }

    fn top(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    fn leq(&self, p: &Subspace, q: &Subspace) -> Result<bool> {
        Ok(self.leq_residual(p, q)? < self.tol.eq)
    }

    fn equal(&self, p: &Subspace, q: &Subspace) -> Result<bool> {
        Ok(self.projector_distance(p, q)? < self.tol.eq)
    }

    fn is_bottom(&self, p: &Subspace) -> Result<bool> {
        self.check(p)?;
        Ok(p.is_zero())
    }

    fn is_top(&self, p: &Subspace) -> Result<bool> {
        self.check(p)?;
        Ok(p.is_full())
    }

    fn is_atom(&self, p: &Subspace) -> Result<bool> {
        self.check(p)?;
        Ok(p.dim() == 1)
    }

    fn join(&self, p: &Subspace, q: &Subspace) -> Result<Subspace> {
        self.check(p)?;
        self.check(q)?;
        let mut cols = CMat::zeros(self.dim, p.dim() + q.dim());
        cols.columns_mut(0, p.dim()).copy_from(p.basis());
        cols.columns_mut(p.dim(), q.dim()).copy_from(q.basis());
        Ok(Subspace::from_columns(&cols, &self.tol))
    }

    /// De Morgan route: `p ∧ q = (p⊥ ∨ q⊥)⊥`.
    fn meet(&self, p: &Subspace, q: &Subspace) -> Result<Subspace> {
        let j = self.join(&self.ortho(p)?, &self.ortho(q)?)?;
        self.ortho(&j)
    }

    fn ortho(&self, p: &Subspace) -> Result<Subspace> {
        self.check(p)?;
        let d = self.dim;
        let complement = CMat::identity(d, d) - p.projector();
        let threshold = self.tol.rank_threshold(1.0);
        Ok(Subspace { basis: linalg::orthonormalize(&complement, threshold, d - p.dim()) })
    }

    /// Image of `p` under `Π_q`.
    fn sasaki(&self, p: &Subspace, q: &Subspace) -> Result<Subspace> {
        self.check(p)?;
        self.check(q)?;
        let image = q.basis() * (q.basis().adjoint() * p.basis());
        let threshold = self.tol.rank_threshold(1.0);
        Ok(Subspace { basis: linalg::orthonormalize(&image, threshold, self.dim) })
    }

    /// Spectral test; an ambiguous spectrum is an error.
    fn compatible(&self, p: &Subspace, q: &Subspace) -> Result<bool> {
        Ok(self.compat_report(p, q)?.compatible)
    }
}

/// Normalizes a nonzero vector; `None` when its norm does not exceed `floor`.
pub(crate) fn normalized(v: &CVec, floor: f64) -> Option<CVec> {
    let n = v.norm();
    (n > floor).then(|| v.unscale(n))
}

/// `‖u − e^{iθ} v‖` minimized over the phase, for unit vectors.
pub fn ray_distance(u: &CVec, v: &CVec) -> f64 {
    let overlap = u.dotc(v).modulus();
    sqrt((2.0 - 2.0 * overlap).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn vec_r(xs: &[f64]) -> CVec {
        CVec::from_iterator(xs.len(), xs.iter().map(|&x| c(x)))
    }

    fn diag_ray(d: usize) -> CVec {
        let s = 1.0 / sqrt(2.0);
        let mut v = CVec::zeros(d);
        v[0] = c(s);
        v[1] = c(s);
        v
    }

    fn close(a: &CMat, b: &CMat) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn projector_examples() {
        let h = HilbertLattice::new(2).unwrap();
        assert!(close(&h.projector(&h.bottom()).unwrap(), &CMat::zeros(2, 2)));
        assert!(close(&h.projector(&h.top()).unwrap(), &CMat::identity(2, 2)));
        let d = h.ray(&vec_r(&[1.0, 1.0])).unwrap();
        let expected = CMat::from_element(2, 2, c(0.5));
        assert!(close(&h.projector(&d).unwrap(), &expected));
    }

    #[test]
    fn ortho_examples() {
        let h2 = HilbertLattice::new(2).unwrap();
        assert!(h2.equal(&h2.ortho(&h2.bottom()).unwrap(), &h2.top()).unwrap());
        let e1 = Subspace::coordinate(2, &[0]);
        assert!(h2.equal(&h2.ortho(&e1).unwrap(), &Subspace::coordinate(2, &[1])).unwrap());
        let h3 = HilbertLattice::new(3).unwrap();
        let plane = Subspace::coordinate(3, &[0, 1]);
        let perp = h3.ortho(&plane).unwrap();
        assert_eq!(perp.dim(), 1);
        assert!(h3.equal(&perp, &Subspace::coordinate(3, &[2])).unwrap());
        let sum = h3.projector(&plane).unwrap() + h3.projector(&perp).unwrap();
        assert!((sum - CMat::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn meet_join_examples() {
        let h = HilbertLattice::new(3).unwrap();
        let p = Subspace::coordinate(3, &[0, 2]);
        assert!(h.equal(&h.join(&p, &h.bottom()).unwrap(), &p).unwrap());
        let m = h.meet(&Subspace::coordinate(3, &[0]), &Subspace::coordinate(3, &[1])).unwrap();
        assert!(m.is_zero());
        let m = h.meet(&Subspace::coordinate(3, &[0, 1]), &Subspace::coordinate(3, &[1, 2])).unwrap();
        assert!(h.equal(&m, &Subspace::coordinate(3, &[1])).unwrap());
        // Commuting projectors: the meet projector is their product.
        let prod = h.projector(&Subspace::coordinate(3, &[0, 1])).unwrap()
            * h.projector(&Subspace::coordinate(3, &[1, 2])).unwrap();
        assert!((prod - m.projector()).norm() < 1e-10);
    }

    #[test]
    fn sasaki_examples() {
        let h = HilbertLattice::new(2).unwrap();
        let e1 = Subspace::coordinate(2, &[0]);
        let d = h.ray(&diag_ray(2)).unwrap();
        assert!(h.equal(&h.sasaki(&h.top(), &d).unwrap(), &d).unwrap());
        assert!(h.equal(&h.sasaki(&e1, &d).unwrap(), &d).unwrap());
        assert!(h.sasaki(&e1, &Subspace::coordinate(2, &[1])).unwrap().is_zero());
        assert!(h.equal(&h.sasaki_formula(&e1, &d).unwrap(), &d).unwrap());
    }

    #[test]
    fn compat_examples() {
        let h = HilbertLattice::new(2).unwrap();
        let e1 = Subspace::coordinate(2, &[0]);
        let r = h.compat_report(&e1, &e1).unwrap();
        assert!(r.compatible);
        assert!((r.spectrum[0] - 1.0).abs() < 1e-12);
        let r = h.compat_report(&e1, &h.ortho(&e1).unwrap()).unwrap();
        assert!(r.compatible);
        assert!(r.spectrum[0].abs() < 1e-12);
        let d = h.ray(&diag_ray(2)).unwrap();
        let r = h.compat_report(&e1, &d).unwrap();
        assert!(!r.compatible);
        assert_eq!(r.spectrum.len(), 1);
        assert!((r.spectrum[0] - 0.5).abs() < 1e-12);
        let (lambda, u) = r.witness.unwrap();
        assert!((lambda - 0.5).abs() < 1e-12);
        assert!(ray_distance(&u, &unit(2, 0)) < 1e-12);
        let r = h.compat_report(&h.bottom(), &d).unwrap();
        assert!(r.compatible && r.spectrum.is_empty());
    }

    #[test]
    fn ambiguous_spectrum_is_an_error() {
        let h = HilbertLattice::new(2).unwrap();
        // ⟨e1|Π_q|e1⟩ = cos²θ = 1e-7 sits in the ambiguity band.
        let lambda: f64 = 1e-7;
        let q = h.ray(&vec_r(&[sqrt(lambda), sqrt(1.0 - lambda)])).unwrap();
        let err = h.compat_report(&Subspace::coordinate(2, &[0]), &q).unwrap_err();
        assert!(matches!(err, Error::AmbiguousSpectrum { .. }));
    }

    #[test]
    fn leq_and_equal_examples() {
        let h = HilbertLattice::new(3).unwrap();
        let p = Subspace::coordinate(3, &[2]);
        assert!(h.leq(&h.bottom(), &p).unwrap());
        assert!(h.equal(&p, &p).unwrap());
        assert!(h.leq(&Subspace::coordinate(3, &[0]), &Subspace::coordinate(3, &[0, 1])).unwrap());
        assert!(!h.leq(&Subspace::coordinate(3, &[0, 1]), &Subspace::coordinate(3, &[0])).unwrap());
    }

    #[test]
    fn construction_orthonormalizes_and_truncates() {
        let h = HilbertLattice::new(3).unwrap();
        let s = h
            .span(&[vec_r(&[3.0, 0.0, 0.0]), vec_r(&[1.0, 1.0, 0.0]), vec_r(&[4.0, 1.0, 0.0])])
            .unwrap();
        assert_eq!(s.dim(), 2);
        assert!(orthonormality_residual(s.basis()) < 1e-12);
        assert!(h.equal(&s, &Subspace::coordinate(3, &[0, 1])).unwrap());
        assert!(h.span(&[CVec::zeros(3)]).unwrap().is_zero());
    }

    #[test]
    fn dimension_checks() {
        let h = HilbertLattice::new(3).unwrap();
        let p = Subspace::full(2);
        assert_eq!(h.meet(&p, &h.top()).unwrap_err(), Error::DimMismatch { expected: 3, found: 2 });
        assert!(HilbertLattice::new(0).is_err());
        assert!(HilbertLattice::new(MAX_DIM + 1).is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let mut tol = Tolerances::default();
        tol.set("eq", 1e-6).unwrap();
        assert_eq!(tol.eq, 1e-6);
        assert!(tol.clone().set("spec", 0.6).is_err());
        assert!(tol.clone().set("bogus", 1.0).is_err());
        assert!(tol.clone().set("rank", 0.0).is_err());
    }
}

//! Finite observables: pairwise-orthogonal nonzero elements joining to `⊤`.

use alloc::vec::Vec;

use nalgebra::SymmetricEigen;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hilbert::{random_unitary, sqrt, unit, CMat, HilbertLattice, Subspace};
use crate::{Error, OrthoLattice, Result};

#[derive(Debug, Clone)]
pub struct Observable<E> {
    pub parts: Vec<E>,
}

impl<E> Observable<E> {
    pub fn new(parts: Vec<E>) -> Self {
        Self { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservableDefect {
    Empty,
    /// Part `i` is `⊥`.
    BottomPart(usize),
    /// Parts `i` and `j` are not orthogonal.
    NotOrthogonal(usize, usize),
    /// The join of all parts is not `⊤`.
    JoinNotTop,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObservableReport {
    pub defects: Vec<ObservableDefect>,
}

impl ObservableReport {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Checks the three defining conditions; numerically for subspaces.
pub fn validate_observable<L: OrthoLattice>(lattice: &L, o: &Observable<L::Elem>) -> Result<ObservableReport> {
    let mut defects = Vec::new();
    if o.parts.is_empty() {
        defects.push(ObservableDefect::Empty);
        return Ok(ObservableReport { defects });
    }
    for (i, p) in o.parts.iter().enumerate() {
        if lattice.is_bottom(p)? {
            defects.push(ObservableDefect::BottomPart(i));
        }
    }
    for i in 0..o.parts.len() {
        for j in (i + 1)..o.parts.len() {
            if !lattice.orthogonal(&o.parts[i], &o.parts[j])? {
                defects.push(ObservableDefect::NotOrthogonal(i, j));
            }
        }
    }
    let mut all = lattice.bottom();
    for p in &o.parts {
        all = lattice.join(&all, p)?;
    }
    if !lattice.is_top(&all)? {
        defects.push(ObservableDefect::JoinNotTop);
    }
    Ok(ObservableReport { defects })
}

/// Eigenspaces of a Hermitian matrix, eigenvalues within `degeneracy` grouped together.
/// Parts are ordered by ascending eigenvalue; the eigenvalues themselves are dropped.
pub fn eigenspaces(space: &HilbertLattice, h: &CMat) -> Result<Observable<Subspace>> {
    let d = space.dim();
    if h.nrows() != d || h.ncols() != d {
        return Err(Error::DimMismatch { expected: d, found: h.nrows() });
    }
    let residual = (h - h.adjoint()).norm();
    if residual >= space.tolerances().eq {
        return Err(Error::NotHermitian { residual });
    }
    let eig = SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let tol = space.tolerances().degeneracy;
    let mut parts = Vec::new();
    let mut group: Vec<usize> = Vec::new();
    for &i in &order {
        if let Some(&last) = group.last() {
            if eig.eigenvalues[i] - eig.eigenvalues[last] >= tol {
                parts.push(group_span(space, &eig.eigenvectors, &group)?);
                group.clear();
            }
        }
        group.push(i);
    }
    parts.push(group_span(space, &eig.eigenvectors, &group)?);
    Ok(Observable::new(parts))
}

fn group_span(space: &HilbertLattice, vectors: &CMat, group: &[usize]) -> Result<Subspace> {
    let cols: Vec<_> = group.iter().map(|&i| vectors.column(i).into_owned()).collect();
    space.span(&cols)
}

/// An atomic observable none of whose parts lies above `e`.
///
/// Tries the standard basis rotated by π/4 in each coordinate plane, then falls back to
/// up to 100 seeded random bases. Every candidate is verified before it is returned.
pub fn refuting_observable(space: &HilbertLattice, e: &Subspace) -> Result<Observable<Subspace>> {
    space.check(e)?;
    let d = space.dim();
    if d < 3 {
        return Err(Error::NoRefutation("ambient dimension must be at least 3"));
    }
    if e.is_zero() {
        return Err(Error::NoRefutation("⊥ lies below every part"));
    }
    if space.is_top(e)? {
        return Err(Error::NoRefutation("every state verifies ⊤"));
    }

    let s = 1.0 / sqrt(2.0);
    for i in 0..d {
        for j in (i + 1)..d {
            let mut basis = CMat::identity(d, d);
            basis.set_column(i, &((unit(d, i) + unit(d, j)) * nalgebra::Complex::new(s, 0.0)));
            basis.set_column(j, &((unit(d, i) - unit(d, j)) * nalgebra::Complex::new(s, 0.0)));
            if let Some(o) = refutes(space, e, &basis)? {
                return Ok(o);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        let basis = random_unitary(&mut rng, d);
        if let Some(o) = refutes(space, e, &basis)? {
            return Ok(o);
        }
    }
    Err(Error::NoRefutation("no candidate basis avoided the element"))
}

fn refutes(space: &HilbertLattice, e: &Subspace, basis: &CMat) -> Result<Option<Observable<Subspace>>> {
    let parts = basis
        .column_iter()
        .map(|c| space.ray(&c.into_owned()))
        .collect::<Result<Vec<_>>>()?;
    let o = Observable::new(parts);
    if !validate_observable(space, &o)?.is_valid() {
        return Ok(None);
    }
    for p in &o.parts {
        if space.leq(e, p)? {
            return Ok(None);
        }
    }
    Ok(Some(o))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{random_subspace, Complex64, CVec};
    use crate::FiniteOml;

    fn diag(xs: &[f64]) -> CMat {
        CMat::from_diagonal(&CVec::from_iterator(xs.len(), xs.iter().map(|&x| Complex64::new(x, 0.0))))
    }

    #[test]
    fn validate_examples() {
        let h = HilbertLattice::new(3).unwrap();
        let p = random_subspace(3, 1, 3).unwrap();
        let binary = Observable::new(alloc::vec![p.clone(), h.ortho(&p).unwrap()]);
        assert!(validate_observable(&h, &binary).unwrap().is_valid());
        let basis = Observable::new((0..3).map(|i| Subspace::coordinate(3, &[i])).collect());
        assert!(validate_observable(&h, &basis).unwrap().is_valid());

        let h2 = HilbertLattice::new(2).unwrap();
        let d = h2.ray(&CVec::from_element(2, Complex64::new(1.0, 0.0))).unwrap();
        let skew = Observable::new(alloc::vec![Subspace::coordinate(2, &[0]), d]);
        let report = validate_observable(&h2, &skew).unwrap();
        assert_eq!(report.defects, [ObservableDefect::NotOrthogonal(0, 1)]);

        let short = Observable::new(alloc::vec![Subspace::coordinate(3, &[0]), Subspace::coordinate(3, &[1])]);
        assert_eq!(validate_observable(&h, &short).unwrap().defects, [ObservableDefect::JoinNotTop]);
        let with_bottom = Observable::new(alloc::vec![h.top(), h.bottom()]);
        assert_eq!(validate_observable(&h, &with_bottom).unwrap().defects, [ObservableDefect::BottomPart(1)]);
    }

    #[test]
    fn finite_lattice_observables() {
        let l = FiniteOml::mo(2).unwrap();
        let a = l.element("a").unwrap();
        let o = Observable::new(alloc::vec![a, l.ortho(&a).unwrap()]);
        assert!(validate_observable(&l, &o).unwrap().is_valid());
        let o = Observable::new(alloc::vec![a, l.element("b").unwrap()]);
        assert!(!validate_observable(&l, &o).unwrap().is_valid());
    }

    #[test]
    fn eigenspace_examples() {
        let h = HilbertLattice::new(3).unwrap();
        let o = eigenspaces(&h, &CMat::identity(3, 3)).unwrap();
        assert_eq!(o.len(), 1);
        assert!(o.parts[0].is_full());

        let o = eigenspaces(&h, &diag(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(o.len(), 3);
        for (i, p) in o.parts.iter().enumerate() {
            assert!(h.equal(p, &Subspace::coordinate(3, &[i])).unwrap());
        }

        let o = eigenspaces(&h, &diag(&[1.0, 1.0, 2.0])).unwrap();
        assert_eq!(o.len(), 2);
        assert!(h.equal(&o.parts[0], &Subspace::coordinate(3, &[0, 1])).unwrap());
        assert!(h.equal(&o.parts[1], &Subspace::coordinate(3, &[2])).unwrap());
        assert!(validate_observable(&h, &o).unwrap().is_valid());
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let h = HilbertLattice::new(2).unwrap();
        let mut m = CMat::identity(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(eigenspaces(&h, &m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn refuting_examples() {
        let h = HilbertLattice::new(3).unwrap();
        for e in [Subspace::coordinate(3, &[0]), Subspace::coordinate(3, &[0, 1])] {
            let o = refuting_observable(&h, &e).unwrap();
            assert_eq!(o.len(), 3);
            assert!(validate_observable(&h, &o).unwrap().is_valid());
            for p in &o.parts {
                assert!(h.leq_residual(&e, p).unwrap() > 0.1);
            }
        }
        // The first rotated basis is {(e1+e2)/√2, (e1−e2)/√2, e3}.
        let o = refuting_observable(&h, &Subspace::coordinate(3, &[0])).unwrap();
        assert!(h.equal(&o.parts[2], &Subspace::coordinate(3, &[2])).unwrap());

        assert!(matches!(refuting_observable(&h, &h.top()), Err(Error::NoRefutation(_))));
        assert!(matches!(refuting_observable(&h, &h.bottom()), Err(Error::NoRefutation(_))));
        let h2 = HilbertLattice::new(2).unwrap();
        assert!(matches!(
            refuting_observable(&h2, &Subspace::coordinate(2, &[0])),
            Err(Error::NoRefutation(_))
        ));
    }

    #[test]
    fn rotated_ray_falls_through_to_next_plane() {
        // (e1+e2)/√2 is itself a part of the first rotated basis.
        let h = HilbertLattice::new(3).unwrap();
        let e = h.ray(&(unit(3, 0) + unit(3, 1))).unwrap();
        let o = refuting_observable(&h, &e).unwrap();
        assert!(o.parts.iter().all(|p| !h.leq(&e, p).unwrap()));
    }
}

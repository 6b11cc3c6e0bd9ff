//! Sasaki filters: nonempty, upward-closed subsets stable under the Sasaki projection.
//!
//! Over a [`FiniteOml`] the filter generated by a set of elements is computed exactly by
//! fixpoint iteration. Over `L(C^d)` only principal filters are represented; a generated
//! filter goes through [`closure_descent`], which either finds its minimum or reports that
//! it could not.

use alloc::vec;
use alloc::vec::Vec;

use crate::hilbert::{normalized, ray_distance, CVec, HilbertLattice, Subspace};
use crate::{Error, FiniteOml, LatticeElement, OrthoLattice, Result};

/// Least Sasaki filter containing `gens`.
pub fn closure_finite(lattice: &FiniteOml, gens: &[LatticeElement]) -> Result<Vec<LatticeElement>> {
    let mask = closure_mask(lattice, gens)?;
    Ok(lattice.iter().filter(|e| mask[e.index()]).collect())
}

fn closure_mask(lattice: &FiniteOml, gens: &[LatticeElement]) -> Result<Vec<bool>> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let all: Vec<LatticeElement> = lattice.iter().collect();
    let mut members = vec![false; all.len()];
    for g in gens {
        lattice.name(*g)?;
        members[g.index()] = true;
    }
    loop {
        let mut changed = false;
        for x in 0..all.len() {
            if !members[x] {
                continue;
            }
            for y in 0..all.len() {
                if !members[y] && lattice.leq(&all[x], &all[y])? {
                    members[y] = true;
                    changed = true;
                }
            }
        }
        for x in 0..all.len() {
            for y in 0..all.len() {
                if members[x] && members[y] {
                    let s = lattice.sasaki(&all[x], &all[y])?.index();
                    if !members[s] {
                        members[s] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(members);
        }
    }
}

/// A failed Sasaki-filter law on a subset of a finite lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterLawViolation {
    Empty,
    /// `p` is in the set, `p ≤ q`, `q` is not.
    NotUpward(LatticeElement, LatticeElement),
    /// `p` and `q` are in the set, `p & q` is not.
    NotSasakiStable(LatticeElement, LatticeElement),
}

/// Checks the three Sasaki-filter laws on `set`, exhaustively.
pub fn filter_law_violations(lattice: &FiniteOml, set: &[LatticeElement]) -> Result<Vec<FilterLawViolation>> {
    let mut out = Vec::new();
    if set.is_empty() {
        out.push(FilterLawViolation::Empty);
    }
    let mut mask = vec![false; lattice.len()];
    for e in set {
        lattice.name(*e)?;
        mask[e.index()] = true;
    }
    for &p in set {
        for q in lattice.iter() {
            if lattice.leq(&p, &q)? && !mask[q.index()] {
                out.push(FilterLawViolation::NotUpward(p, q));
            }
        }
        for &q in set {
            let s = lattice.sasaki(&p, &q)?;
            if !mask[s.index()] {
                out.push(FilterLawViolation::NotSasakiStable(p, q));
            }
        }
    }
    Ok(out)
}

/// A Sasaki filter of a finite lattice, stored as its member set.
#[derive(Debug, Clone)]
pub struct FiniteFilter<'l> {
    lattice: &'l FiniteOml,
    generators: Vec<LatticeElement>,
    principal: bool,
    members: Vec<bool>,
}

impl<'l> FiniteFilter<'l> {
    /// `m↑`.
    pub fn principal(lattice: &'l FiniteOml, min: LatticeElement) -> Result<Self> {
        let members = lattice.iter().map(|e| lattice.leq(&min, &e)).collect::<Result<Vec<_>>>()?;
        Ok(Self { lattice, generators: vec![min], principal: true, members })
    }

    pub fn generated(lattice: &'l FiniteOml, gens: &[LatticeElement]) -> Result<Self> {
        let members = closure_mask(lattice, gens)?;
        Ok(Self { lattice, generators: gens.to_vec(), principal: false, members })
    }

    pub fn lattice(&self) -> &FiniteOml {
        self.lattice
    }

    pub fn generators(&self) -> &[LatticeElement] {
        &self.generators
    }

    pub fn is_principal_form(&self) -> bool {
        self.principal
    }

    pub fn member(&self, p: LatticeElement) -> Result<bool> {
        self.lattice.name(p)?;
        Ok(self.members[p.index()])
    }

    pub fn members(&self) -> Vec<LatticeElement> {
        self.lattice.iter().filter(|e| self.members[e.index()]).collect()
    }

    /// `⊥ ∉ F`.
    pub fn is_consistent(&self) -> bool {
        !self.members[self.lattice.bottom().index()]
    }

    /// Atoms contained in the filter.
    pub fn atoms(&self) -> Vec<LatticeElement> {
        self.lattice.atoms().into_iter().filter(|a| self.members[a.index()]).collect()
    }

    /// Least member, when the filter has one (the filter is then principal).
    pub fn minimum(&self) -> Option<LatticeElement> {
        let members = self.members();
        let m = members
            .iter()
            .try_fold(self.lattice.top(), |acc, p| self.lattice.meet(&acc, p))
            .ok()?;
        self.members[m.index()].then_some(m)
    }
}

/// Result of the descent procedure over `L(C^d)`.
#[derive(Debug, Clone)]
pub struct DescentResult {
    /// Final candidate minimum; a member of the generated filter.
    pub candidate: Subspace,
    /// Every generator lies above the candidate, so the filter is exactly `candidate↑`.
    pub principal: bool,
    pub sweeps: usize,
}

/// Candidate minimum of the Sasaki filter generated by `gens` over `L(C^d)`.
///
/// Starting from `⊤`, replaces the candidate `m` by `m & g` for each generator in input
/// order. Stops when a sweep leaves `m` unchanged, when `m` reaches `⊥`, or when a sweep
/// changes `m` without lowering its dimension (the candidate is cycling). The last case
/// yields `principal = false`: a certificate that this procedure did not find a minimum,
/// not a proof that none exists.
pub fn closure_descent(space: &HilbertLattice, gens: &[Subspace]) -> Result<DescentResult> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for g in gens {
        space.check(g)?;
    }
    let max_sweeps = space.dim() * gens.len() + 1;
    let mut m = space.top();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let start = m.clone();
        for g in gens {
            m = space.sasaki(&m, g)?;
            if m.is_zero() {
                break;
            }
        }
        if m.is_zero() || space.equal(&m, &start)? || m.dim() == start.dim() || sweeps >= max_sweeps {
            break;
        }
    }
    let mut principal = true;
    for g in gens {
        principal &= space.leq(&m, g)?;
    }
    Ok(DescentResult { candidate: m, principal, sweeps })
}

/// A Sasaki filter of `L(C^d)`.
#[derive(Debug, Clone)]
pub enum SubspaceFilter {
    Principal(Subspace),
    Generated { generators: Vec<Subspace>, descent: DescentResult },
}

impl SubspaceFilter {
    pub fn generated(space: &HilbertLattice, gens: &[Subspace]) -> Result<Self> {
        let descent = closure_descent(space, gens)?;
        Ok(Self::Generated { generators: gens.to_vec(), descent })
    }

    /// Membership in `min↑`; for generated filters, in the descent candidate's up-set.
    pub fn member(&self, space: &HilbertLattice, p: &Subspace) -> Result<bool> {
        space.leq(self.candidate(), p)
    }

    fn candidate(&self) -> &Subspace {
        match self {
            Self::Principal(m) => m,
            Self::Generated { descent, .. } => &descent.candidate,
        }
    }

    /// Minimum element, when known.
    pub fn minimum(&self) -> Option<&Subspace> {
        match self {
            Self::Principal(m) => Some(m),
            Self::Generated { descent, .. } => descent.principal.then_some(&descent.candidate),
        }
    }

    /// `None` when the descent stopped without a minimum: the candidate is a nonzero member
    /// but `⊥` may still be generated.
    pub fn is_consistent(&self) -> Option<bool> {
        match self {
            Self::Principal(m) => Some(!m.is_zero()),
            Self::Generated { descent, .. } if descent.candidate.is_zero() => Some(false),
            Self::Generated { descent, .. } => descent.principal.then_some(true),
        }
    }

    /// Atoms of `m↑`: the ray `m` itself when `dim m = 1`, none otherwise.
    pub fn atoms(&self) -> Result<Vec<Subspace>> {
        let m = self
            .minimum()
            .ok_or(Error::Unsupported("atoms of a generated filter without a known minimum"))?;
        if m.is_zero() {
            return Err(Error::Unsupported("atoms of an inconsistent filter"));
        }
        Ok(if m.dim() == 1 { vec![m.clone()] } else { Vec::new() })
    }
}

/// Rays and plane built from a pair of incompatible subspaces.
#[derive(Debug, Clone)]
pub struct IncompatibilityWitness {
    /// Eigenvalue of `Π_P ∘ Π_Q|_P` outside `{0, 1}`.
    pub eigenvalue: f64,
    /// Unit eigenvector in `P`.
    pub u: CVec,
    /// `Π_Q u`, normalized.
    pub v: CVec,
    /// `span(u, v)`.
    pub c: Subspace,
    pub residuals: WitnessResiduals,
}

/// Numerical margins of the witness postconditions. The first four should vanish; the
/// last four should stay bounded away from zero.
#[derive(Debug, Clone, Copy)]
pub struct WitnessResiduals {
    pub commutator_cp: f64,
    pub commutator_cq: f64,
    /// `‖Π_{P&C} − Π_{span u}‖_F`.
    pub p_and_c: f64,
    /// `‖Π_{Q&C} − Π_{span v}‖_F`.
    pub q_and_c: f64,
    /// `‖(I − Π_Q) u‖`.
    pub u_outside_q: f64,
    /// `‖(I − Π_P) v‖`.
    pub v_outside_p: f64,
    /// `dim P − dim (C⊥ & P)`.
    pub p_drop: usize,
    /// `dim Q − dim (C⊥ & Q)`.
    pub q_drop: usize,
}

/// Builds `C = span(u, v)` compatible with both `P` and `Q` such that `P & C` and `Q & C`
/// are distinct rays, and checks every postcondition before returning.
pub fn refine_incompatible(space: &HilbertLattice, p: &Subspace, q: &Subspace) -> Result<IncompatibilityWitness> {
    let report = space.compat_report(p, q)?;
    let (eigenvalue, u) = report.witness.ok_or(Error::NotIncompatible)?;
    let floor = space.tolerances().rank;
    let v = normalized(&q.project(&u), floor).ok_or(Error::Postcondition("Π_Q u vanished"))?;
    let span_u = space.ray(&u)?;
    let span_v = space.ray(&v)?;
    let c = space.join(&span_u, &span_v)?;
    if c.dim() != 2 {
        return Err(Error::Postcondition("u and v are collinear"));
    }
    let c_perp = space.ortho(&c)?;
    let p_low = space.sasaki(&c_perp, p)?;
    let q_low = space.sasaki(&c_perp, q)?;
    let residuals = WitnessResiduals {
        commutator_cp: space.commutator_norm(&c, p)?,
        commutator_cq: space.commutator_norm(&c, q)?,
        p_and_c: space.projector_distance(&space.sasaki(p, &c)?, &span_u)?,
        q_and_c: space.projector_distance(&space.sasaki(q, &c)?, &span_v)?,
        u_outside_q: (&u - q.project(&u)).norm(),
        v_outside_p: (&v - p.project(&v)).norm(),
        p_drop: p.dim() - p_low.dim(),
        q_drop: q.dim() - q_low.dim(),
    };

    let tol = space.tolerances();
    if !space.compatible(&c, p)? || !space.compatible(&c, q)? {
        return Err(Error::Postcondition("C is not compatible with both P and Q"));
    }
    if residuals.p_and_c >= tol.eq || residuals.q_and_c >= tol.eq {
        return Err(Error::Postcondition("P & C or Q & C is not the expected ray"));
    }
    if space.leq(&span_u, q)? || space.leq(&span_v, p)? || ray_distance(&u, &v) < tol.eq {
        return Err(Error::Postcondition("u lies in Q or v lies in P"));
    }
    if !space.leq(&p_low, p)? || !space.leq(&q_low, q)? || residuals.p_drop == 0 || residuals.q_drop == 0 {
        return Err(Error::Postcondition("C⊥ & P < P and C⊥ & Q < Q must both hold"));
    }
    Ok(IncompatibilityWitness { eigenvalue, u, v, c, residuals })
}

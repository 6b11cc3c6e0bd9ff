//! Labelled-graph models of the measurement logic.
//!
//! A model is a directed graph whose edges `(a, p, b)` say that measuring the system `a`
//! can yield outcome `p` and leave the system `b`. A vertex *verifies* `p` when no edge
//! labelled `p⊥` leaves it.
//!
//! Three kinds of graphs are provided:
//!
//! - [`ExplicitGraph`]: finite vertex and edge lists over any lattice;
//! - [`HilbertGraph`]: unit vectors of `C^d`, with `φ → Π_p φ / ‖Π_p φ‖` edges;
//! - [`LatticeGraph`]: nonzero lattice elements, with `a → b` labelled `p` iff `b ≤ a & p`.

mod axioms;
pub mod mutants;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hilbert::{normalized, random_subspace_with, random_unit_vector, CVec, HilbertLattice, Subspace};
use crate::{Error, FiniteOml, OrthoLattice, Result};

pub use axioms::{check_axioms, Axiom, AxiomOutcome, AxiomReport, Counterexample, Sampling};

/// Element type of a model's label lattice.
pub type Label<M> = <<M as Model>::Lattice as OrthoLattice>::Elem;

/// Minimum of a vertex's bracket `⟦a⟧ = { p | a ⊨ p }`.
#[derive(Debug, Clone)]
pub struct BracketMin<E> {
    pub min: E,
    /// `⟦a⟧` equals the up-set of `min`.
    pub principal: bool,
}

pub trait Model {
    type Lattice: OrthoLattice;
    type Vertex: Clone + Debug;

    fn lattice(&self) -> &Self::Lattice;

    fn check_vertex(&self, a: &Self::Vertex) -> Result<()>;

    /// `a ⊨ p`: no measurement of `a` can yield `p⊥`.
    fn verifies(&self, a: &Self::Vertex, p: &Label<Self>) -> Result<bool>;

    /// `M(a, p, b)`.
    fn has_edge(&self, a: &Self::Vertex, p: &Label<Self>, b: &Self::Vertex) -> Result<bool>;

    /// A successor of `a` under outcome `p`, or `None` when `p` is impossible at `a`.
    fn step(&self, a: &Self::Vertex, p: &Label<Self>) -> Result<Option<Self::Vertex>>;

    /// All vertices, when the graph is finite.
    fn vertices(&self) -> Option<Vec<Self::Vertex>> {
        None
    }

    /// All outgoing edges as `(label, target)`, when they can be enumerated.
    fn out_edges(&self, _a: &Self::Vertex) -> Result<Option<Vec<(Label<Self>, Self::Vertex)>>> {
        Ok(None)
    }

    /// Seeded vertex sample for graphs too large to enumerate.
    fn sample_vertices(&self, probe: &[Label<Self>], n: usize, seed: u64) -> Result<Vec<Self::Vertex>>;

    fn bracket_min(&self, a: &Self::Vertex) -> Result<BracketMin<Label<Self>>>;

    /// Number of atoms in `⟦a⟧`.
    fn atom_count(&self, a: &Self::Vertex) -> Result<usize>;
}

/// Lattices that can produce random elements for vertex sampling.
pub trait SampleElements: OrthoLattice {
    fn sample_element(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}

impl SampleElements for FiniteOml {
    fn sample_element(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        self.element_at(rng.gen_range(0..self.len())).unwrap_or_else(|| self.top())
    }
}

impl SampleElements for HilbertLattice {
    /// Random subspace of uniformly chosen rank `0..=d`.
    fn sample_element(&self, rng: &mut ChaCha8Rng) -> Subspace {
        let r = rng.gen_range(0..=self.dim());
        random_subspace_with(rng, self.dim(), r).unwrap_or_else(|_| self.top())
    }
}

#[derive(Debug, Clone)]
pub struct Edge<E> {
    pub from: usize,
    pub label: E,
    pub to: usize,
}

/// A finite labelled graph.
#[derive(Debug, Clone)]
pub struct ExplicitGraph<L: OrthoLattice> {
    lattice: L,
    names: Vec<String>,
    edges: Vec<Edge<L::Elem>>,
}

impl<L: OrthoLattice> ExplicitGraph<L> {
    pub fn new(lattice: L, names: Vec<String>, edges: Vec<Edge<L::Elem>>) -> Result<Self> {
        for e in &edges {
            for v in [e.from, e.to] {
                if v >= names.len() {
                    return Err(Error::UnknownVertex(format!("#{v}")));
                }
            }
            lattice.leq(&e.label, &e.label)?;
        }
        Ok(Self { lattice, names, edges })
    }

    /// Materializes the lattice graph of a finite lattice: vertices are the nonzero
    /// elements (named by their `Debug` form), edges `(a, p, b)` for every nonzero `b ≤ a & p`.
    pub fn from_lattice_graph(lattice: L) -> Result<Self>
    where
        L::Elem: PartialEq,
    {
        let elements = lattice
            .elements()
            .ok_or(Error::Unsupported("lattice graph of an infinite lattice"))?;
        let mut vertices = Vec::new();
        for e in &elements {
            if !lattice.is_bottom(e)? {
                vertices.push(e.clone());
            }
        }
        let mut edges = Vec::new();
        for (a, va) in vertices.iter().enumerate() {
            for p in &elements {
                let s = lattice.sasaki(va, p)?;
                for (b, vb) in vertices.iter().enumerate() {
                    if lattice.leq(vb, &s)? {
                        edges.push(Edge { from: a, label: p.clone(), to: b });
                    }
                }
            }
        }
        let names = vertices.iter().map(|v| format!("{v:?}")).collect();
        Self::new(lattice, names, edges)
    }

    pub fn lattice(&self) -> &L {
        &self.lattice
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.names.len() {
            return Err(Error::Unsupported("vertex renaming must keep the vertex count"));
        }
        self.names = names;
        Ok(())
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge<L::Elem>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Adds a vertex and returns its index.
    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, label: L::Elem, to: usize) -> Result<()> {
        for v in [from, to] {
            self.check_vertex(&v)?;
        }
        self.lattice.leq(&label, &label)?;
        self.edges.push(Edge { from, label, to });
        Ok(())
    }

    pub fn remove_edges_where(&mut self, mut pred: impl FnMut(&Edge<L::Elem>) -> bool) {
        self.edges.retain(|e| !pred(e));
    }
}

impl ExplicitGraph<FiniteOml> {
    /// Lattice graph of a finite lattice with vertices named after their elements.
    pub fn finite_lattice_graph(lattice: &FiniteOml) -> Result<Self> {
        let mut g = Self::from_lattice_graph(lattice.clone())?;
        let bottom = lattice.bottom();
        let names = lattice.iter().filter(|e| *e != bottom).map(|e| lattice.name(e).map(String::from)).collect::<Result<Vec<_>>>()?;
        g.set_names(names)?;
        Ok(g)
    }
}

impl<L: OrthoLattice> Model for ExplicitGraph<L> {
    type Lattice = L;
    type Vertex = usize;

    fn lattice(&self) -> &L {
        &self.lattice
    }

    fn check_vertex(&self, a: &usize) -> Result<()> {
        if *a < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{a}")))
        }
    }

    fn verifies(&self, a: &usize, p: &L::Elem) -> Result<bool> {
        self.check_vertex(a)?;
        let p_perp = self.lattice.ortho(p)?;
        for e in self.edges.iter().filter(|e| e.from == *a) {
            if self.lattice.equal(&e.label, &p_perp)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn has_edge(&self, a: &usize, p: &L::Elem, b: &usize) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        for e in self.edges.iter().filter(|e| e.from == *a && e.to == *b) {
            if self.lattice.equal(&e.label, p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Lowest-indexed successor.
    fn step(&self, a: &usize, p: &L::Elem) -> Result<Option<usize>> {
        self.check_vertex(a)?;
        let mut best: Option<usize> = None;
        for e in self.edges.iter().filter(|e| e.from == *a) {
            if best.is_none_or(|b| e.to < b) && self.lattice.equal(&e.label, p)? {
                best = Some(e.to);
            }
        }
        Ok(best)
    }

    fn vertices(&self) -> Option<Vec<usize>> {
        Some((0..self.names.len()).collect())
    }

    fn out_edges(&self, a: &usize) -> Result<Option<Vec<(L::Elem, usize)>>> {
        self.check_vertex(a)?;
        Ok(Some(
            self.edges
                .iter()
                .filter(|e| e.from == *a)
                .map(|e| (e.label.clone(), e.to))
                .collect(),
        ))
    }

    fn sample_vertices(&self, _probe: &[L::Elem], _n: usize, _seed: u64) -> Result<Vec<usize>> {
        Ok((0..self.names.len()).collect())
    }

    /// Meet of every verified element; `principal` tells whether the bracket is exactly its
    /// up-set. Requires a finite label lattice.
    fn bracket_min(&self, a: &usize) -> Result<BracketMin<L::Elem>> {
        let elements = self
            .lattice
            .elements()
            .ok_or(Error::Unsupported("bracket scan over an infinite label lattice"))?;
        let mut verified = Vec::new();
        for p in &elements {
            verified.push(self.verifies(a, p)?);
        }
        let mut min = self.lattice.top();
        for (p, _) in elements.iter().zip(&verified).filter(|(_, v)| **v) {
            min = self.lattice.meet(&min, p)?;
        }
        let mut principal = true;
        for (p, v) in elements.iter().zip(&verified) {
            principal &= *v == self.lattice.leq(&min, p)?;
        }
        Ok(BracketMin { min, principal })
    }

    fn atom_count(&self, a: &usize) -> Result<usize> {
        let elements = self
            .lattice
            .elements()
            .ok_or(Error::Unsupported("atom count over an infinite label lattice"))?;
        let mut n = 0;
        for p in &elements {
            if self.lattice.is_atom(p)? && self.verifies(a, p)? {
                n += 1;
            }
        }
        Ok(n)
    }
}

/// The lattice graph: vertices are nonzero elements, `M(a, p, b) ⇔ b ≤ a & p`.
#[derive(Debug, Clone)]
pub struct LatticeGraph<L> {
    lattice: L,
}

impl<L: OrthoLattice> LatticeGraph<L> {
    pub fn new(lattice: L) -> Self {
        Self { lattice }
    }
}

impl<L: SampleElements> Model for LatticeGraph<L> {
    type Lattice = L;
    type Vertex = L::Elem;

    fn lattice(&self) -> &L {
        &self.lattice
    }

    fn check_vertex(&self, a: &L::Elem) -> Result<()> {
        if self.lattice.is_bottom(a)? {
            Err(Error::UnknownVertex("⊥ is not a vertex of the lattice graph".into()))
        } else {
            Ok(())
        }
    }

    /// `a ≤ p`.
    fn verifies(&self, a: &L::Elem, p: &L::Elem) -> Result<bool> {
        self.check_vertex(a)?;
        self.lattice.leq(a, p)
    }

    fn has_edge(&self, a: &L::Elem, p: &L::Elem, b: &L::Elem) -> Result<bool> {
        self.check_vertex(a)?;
        if self.lattice.is_bottom(b)? {
            return Ok(false);
        }
        self.lattice.leq(b, &self.lattice.sasaki(a, p)?)
    }

    /// The greatest successor `a & p`.
    fn step(&self, a: &L::Elem, p: &L::Elem) -> Result<Option<L::Elem>> {
        self.check_vertex(a)?;
        let s = self.lattice.sasaki(a, p)?;
        Ok((!self.lattice.is_bottom(&s)?).then_some(s))
    }

    fn vertices(&self) -> Option<Vec<L::Elem>> {
        let all = self.lattice.elements()?;
        let mut out = Vec::new();
        for e in all {
            if !self.lattice.is_bottom(&e).ok()? {
                out.push(e);
            }
        }
        Some(out)
    }

    fn out_edges(&self, a: &L::Elem) -> Result<Option<Vec<(L::Elem, L::Elem)>>> {
        self.check_vertex(a)?;
        let Some(all) = self.lattice.elements() else {
            return Ok(None);
        };
        let mut out = Vec::new();
        for p in &all {
            let s = self.lattice.sasaki(a, p)?;
            for b in &all {
                if !self.lattice.is_bottom(b)? && self.lattice.leq(b, &s)? {
                    out.push((p.clone(), b.clone()));
                }
            }
        }
        Ok(Some(out))
    }

    /// Half uniformly random elements, half `x & p` for random `x` and probe labels `p`.
    fn sample_vertices(&self, probe: &[L::Elem], n: usize, seed: u64) -> Result<Vec<L::Elem>> {
        if let Some(all) = self.vertices() {
            return Ok(all);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        let mut k = 0usize;
        while out.len() < n {
            let x = self.lattice.sample_element(&mut rng);
            let candidate = if out.len() % 2 == 1 && !probe.is_empty() {
                k += 1;
                self.lattice.sasaki(&x, &probe[(k - 1) % probe.len()])?
            } else {
                x
            };
            if !self.lattice.is_bottom(&candidate)? {
                out.push(candidate);
            }
        }
        Ok(out)
    }

    fn bracket_min(&self, a: &L::Elem) -> Result<BracketMin<L::Elem>> {
        self.check_vertex(a)?;
        Ok(BracketMin { min: a.clone(), principal: true })
    }

    fn atom_count(&self, a: &L::Elem) -> Result<usize> {
        self.check_vertex(a)?;
        Ok(usize::from(self.lattice.is_atom(a)?))
    }
}

/// The Hilbert graph over `C^d`: unit vectors, with `M(φ, p, ψ)` iff `Π_p φ ≠ 0` and
/// `ψ = Π_p φ / ‖Π_p φ‖`.
#[derive(Debug, Clone)]
pub struct HilbertGraph {
    space: HilbertLattice,
}

impl HilbertGraph {
    pub fn new(space: HilbertLattice) -> Self {
        Self { space }
    }

    pub fn space(&self) -> &HilbertLattice {
        &self.space
    }
}

impl Model for HilbertGraph {
    type Lattice = HilbertLattice;
    type Vertex = CVec;

    fn lattice(&self) -> &HilbertLattice {
        &self.space
    }

    fn check_vertex(&self, a: &CVec) -> Result<()> {
        self.space.check_vec(a)?;
        if (a.norm() - 1.0).abs() < self.space.tolerances().eq {
            Ok(())
        } else {
            Err(Error::UnknownVertex("vertices of the Hilbert graph are unit vectors".into()))
        }
    }

    /// `φ ∈ p`.
    fn verifies(&self, a: &CVec, p: &Subspace) -> Result<bool> {
        self.check_vertex(a)?;
        self.space.check(p)?;
        Ok((a - p.project(a)).norm() < self.space.tolerances().eq)
    }

    fn has_edge(&self, a: &CVec, p: &Subspace, b: &CVec) -> Result<bool> {
        self.check_vertex(b)?;
        Ok(match self.step(a, p)? {
            Some(next) => (next - b).norm() < self.space.tolerances().eq,
            None => false,
        })
    }

    fn step(&self, a: &CVec, p: &Subspace) -> Result<Option<CVec>> {
        self.check_vertex(a)?;
        self.space.check(p)?;
        Ok(normalized(&p.project(a), self.space.tolerances().rank))
    }

    /// Half uniformly random unit vectors, half random vectors projected onto probe labels.
    fn sample_vertices(&self, probe: &[Subspace], n: usize, seed: u64) -> Result<Vec<CVec>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        let mut k = 0usize;
        while out.len() < n {
            let phi = random_unit_vector(&mut rng, self.space.dim());
            if out.len() % 2 == 1 && !probe.is_empty() {
                k += 1;
                if let Some(psi) = self.step(&phi, &probe[(k - 1) % probe.len()])? {
                    out.push(psi);
                }
            } else {
                out.push(phi);
            }
        }
        Ok(out)
    }

    /// `span(φ)`.
    fn bracket_min(&self, a: &CVec) -> Result<BracketMin<Subspace>> {
        self.check_vertex(a)?;
        Ok(BracketMin { min: self.space.ray(a)?, principal: true })
    }

    fn atom_count(&self, a: &CVec) -> Result<usize> {
        self.check_vertex(a)?;
        Ok(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{random_subspace, sqrt, unit};
    use crate::observables::refuting_observable;

    fn diag(d: usize) -> CVec {
        (unit(d, 0) + unit(d, 1)).unscale(sqrt(2.0))
    }

    #[test]
    fn verifies_examples() {
        let l = FiniteOml::mo(2).unwrap();
        let lg = LatticeGraph::new(l.clone());
        for a in lg.vertices().unwrap() {
            assert!(lg.verifies(&a, &l.top()).unwrap());
            assert!(lg.verifies(&a, &a).unwrap());
        }
        let h = HilbertLattice::new(2).unwrap();
        let hg = HilbertGraph::new(h.clone());
        let d = h.ray(&diag(2)).unwrap();
        assert!(!hg.verifies(&unit(2, 0), &d).unwrap());
        assert!(hg.verifies(&unit(2, 0), &h.top()).unwrap());
        assert!(matches!(lg.verifies(&l.bottom(), &l.top()), Err(Error::UnknownVertex(_))));
        assert!(matches!(hg.verifies(&CVec::zeros(2), &d), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn step_examples() {
        let h = HilbertLattice::new(2).unwrap();
        let hg = HilbertGraph::new(h.clone());
        let d = h.ray(&diag(2)).unwrap();
        let next = hg.step(&unit(2, 0), &d).unwrap().unwrap();
        assert!((next - diag(2)).norm() < 1e-12);
        assert!(hg.step(&unit(2, 0), &Subspace::coordinate(2, &[1])).unwrap().is_none());
        assert!((hg.step(&unit(2, 0), &h.top()).unwrap().unwrap() - unit(2, 0)).norm() < 1e-12);

        let l = FiniteOml::mo(2).unwrap();
        let lg = LatticeGraph::new(l.clone());
        let a = l.element("a").unwrap();
        assert_eq!(lg.step(&a, &l.ortho(&a).unwrap()).unwrap(), None);
        assert_eq!(lg.step(&a, &l.top()).unwrap(), Some(a));
    }

    #[test]
    fn explicit_lattice_graph_matches_implicit() {
        let l = FiniteOml::mo(2).unwrap();
        let lg = LatticeGraph::new(l.clone());
        let g = ExplicitGraph::from_lattice_graph(l.clone()).unwrap();
        let vs = lg.vertices().unwrap();
        assert_eq!(g.len(), 5);
        for (i, a) in vs.iter().enumerate() {
            for p in l.iter() {
                assert_eq!(g.verifies(&i, &p).unwrap(), lg.verifies(a, &p).unwrap());
                for (j, b) in vs.iter().enumerate() {
                    assert_eq!(g.has_edge(&i, &p, &j).unwrap(), lg.has_edge(a, &p, b).unwrap());
                }
            }
        }
        assert_eq!(g.step(&0, &l.top()).unwrap(), Some(0));
    }

    #[test]
    fn bracket_examples() {
        let l = FiniteOml::mo(2).unwrap();
        let a = l.element("a").unwrap();
        let lg = LatticeGraph::new(l.clone());
        assert_eq!(lg.bracket_min(&a).unwrap().min, a);
        assert_eq!(lg.atom_count(&a).unwrap(), 1);
        assert_eq!(lg.atom_count(&l.top()).unwrap(), 0);

        let g = ExplicitGraph::finite_lattice_graph(&l).unwrap();
        let va = g.vertex("a").unwrap();
        let b = g.bracket_min(&va).unwrap();
        assert_eq!(b.min, a);
        assert!(b.principal);
        let vtop = g.vertex("1").unwrap();
        assert_eq!(g.atom_count(&vtop).unwrap(), 0);

        let h = HilbertLattice::new(3).unwrap();
        let hg = HilbertGraph::new(h.clone());
        let phi = diag(3);
        let b = hg.bracket_min(&phi).unwrap();
        assert!(h.equal(&b.min, &h.ray(&phi).unwrap()).unwrap());
        assert_eq!(hg.atom_count(&phi).unwrap(), 1);
        let lgh = LatticeGraph::new(h.clone());
        assert_eq!(lgh.atom_count(&random_subspace(3, 2, 0).unwrap()).unwrap(), 0);
    }

    #[test]
    fn two_atom_bracket_is_not_principal() {
        // A vertex verifying the two MO2 atoms a and b (hidden-variable style) has a
        // non-principal bracket with two atoms.
        let l = FiniteOml::mo(2).unwrap();
        let mut g = ExplicitGraph::new(l.clone(), Vec::new(), Vec::new()).unwrap();
        let v = g.add_vertex("λ");
        for name in ["a", "b", "1"] {
            g.add_edge(v, l.element(name).unwrap(), v).unwrap();
        }
        assert_eq!(g.atom_count(&v).unwrap(), 2);
        assert!(!g.bracket_min(&v).unwrap().principal);
    }

    #[test]
    fn successors_verify_their_outcome() {
        let h = HilbertLattice::new(3).unwrap();
        let hg = HilbertGraph::new(h.clone());
        let lg = LatticeGraph::new(h.clone());
        let labels: Vec<_> = (0..6).map(|s| random_subspace(3, 1 + (s as usize % 2), s).unwrap()).collect();
        for phi in hg.sample_vertices(&labels, 16, 5).unwrap() {
            for p in &labels {
                if let Some(next) = hg.step(&phi, p).unwrap() {
                    assert!(hg.verifies(&next, p).unwrap());
                    assert!(hg.has_edge(&phi, p, &next).unwrap());
                    for q in &labels {
                        if hg.verifies(&phi, q).unwrap() {
                            assert!(hg.verifies(&next, &h.sasaki(q, p).unwrap()).unwrap());
                        }
                    }
                }
            }
        }
        for a in lg.sample_vertices(&labels, 16, 5).unwrap() {
            for p in &labels {
                if let Some(b) = lg.step(&a, p).unwrap() {
                    assert!(lg.verifies(&b, p).unwrap());
                    assert!(lg.has_edge(&a, p, &b).unwrap());
                }
            }
        }
    }

    #[test]
    fn refuting_observable_is_not_verified() {
        let h = HilbertLattice::new(3).unwrap();
        let hg = HilbertGraph::new(h.clone());
        let lg = LatticeGraph::new(h.clone());
        for phi in hg.sample_vertices(&[], 8, 1).unwrap() {
            let e = hg.bracket_min(&phi).unwrap().min;
            let o = refuting_observable(&h, &e).unwrap();
            assert!(o.parts.iter().all(|p| !hg.verifies(&phi, p).unwrap()));
        }
        for a in lg.sample_vertices(&[], 8, 1).unwrap() {
            if h.is_top(&a).unwrap() {
                continue;
            }
            let o = refuting_observable(&h, &a).unwrap();
            assert!(o.parts.iter().all(|p| !lg.verifies(&a, p).unwrap()));
        }
    }

    #[test]
    fn explicit_graph_rejects_bad_endpoints() {
        let l = FiniteOml::mo(1).unwrap();
        let edge = Edge { from: 0, label: l.top(), to: 3 };
        assert!(matches!(
            ExplicitGraph::new(l.clone(), alloc::vec!["x".into()], alloc::vec![edge]),
            Err(Error::UnknownVertex(_))
        ));
        let other = FiniteOml::mo(1).unwrap();
        let edge = Edge { from: 0, label: other.top(), to: 0 };
        assert!(matches!(
            ExplicitGraph::new(l, alloc::vec!["x".into()], alloc::vec![edge]),
            Err(Error::MixedLattice)
        ));
    }
}

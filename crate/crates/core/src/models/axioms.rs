use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Label, Model};
use crate::{Error, OrthoLattice, Result};

/// The six axioms of the measurement logic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// (a) `∀s  s ⊨ ⊤`.
    VerifiesTop,
    /// (b) `∀s  ¬(s ⊨ ⊥)`.
    NeverVerifiesBottom,
    /// (c) for `p ≠ ⊤`, `∃s  ¬(s ⊨ p)`.
    Refutable,
    /// (d) for `p ≤ q`, `s ⊨ p ⟹ s ⊨ q`.
    Monotone,
    /// (e) `s ⊨ p ∧ s ⊨ q ⟹ s ⊨ p & q`.
    SasakiStable,
    /// (f) `s ⊨ p ∧ M(s, q, t) ⟹ t ⊨ p & q`.
    Preservation,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::VerifiesTop,
        Axiom::NeverVerifiesBottom,
        Axiom::Refutable,
        Axiom::Monotone,
        Axiom::SasakiStable,
        Axiom::Preservation,
    ];

    pub fn letter(self) -> char {
        match self {
            Axiom::VerifiesTop => 'a',
            Axiom::NeverVerifiesBottom => 'b',
            Axiom::Refutable => 'c',
            Axiom::Monotone => 'd',
            Axiom::SasakiStable => 'e',
            Axiom::Preservation => 'f',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.letter() == c)
    }

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::VerifiesTop => "every state verifies ⊤",
            Axiom::NeverVerifiesBottom => "no state verifies ⊥",
            Axiom::Refutable => "every p ≠ ⊤ is not verified by some state",
            Axiom::Monotone => "s ⊨ p and p ≤ q imply s ⊨ q",
            Axiom::SasakiStable => "s ⊨ p and s ⊨ q imply s ⊨ p & q",
            Axiom::Preservation => "s ⊨ p and M(s, q, t) imply t ⊨ p & q",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.letter(), self.statement())
    }
}

/// A concrete instance where an axiom fails.
#[derive(Debug, Clone)]
pub struct Counterexample<V, E> {
    pub vertex: Option<V>,
    pub labels: Vec<E>,
    pub edge: Option<(V, E, V)>,
}

#[derive(Debug, Clone)]
pub struct AxiomOutcome<V, E> {
    pub passed: bool,
    pub counterexample: Option<Counterexample<V, E>>,
}

impl<V, E> AxiomOutcome<V, E> {
    fn pass() -> Self {
        Self { passed: true, counterexample: None }
    }

    fn fail(&mut self, c: Counterexample<V, E>) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(c);
        }
    }
}

#[derive(Debug, Clone)]
pub struct AxiomReport<V, E> {
    /// Every vertex, label and edge was examined, so a pass is a proof.
    pub exhaustive: bool,
    pub vertices_checked: usize,
    pub labels_checked: usize,
    pub edges_checked: usize,
    /// One outcome per axiom, in the order of [`Axiom::ALL`].
    pub outcomes: Vec<(Axiom, AxiomOutcome<V, E>)>,
    /// `M(s, q, t) ⟹ t ⊨ q`.
    pub derived: AxiomOutcome<V, E>,
}

impl<V, E> AxiomReport<V, E> {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|(_, o)| o.passed)
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.outcomes.iter().filter(|(_, o)| !o.passed).map(|(a, _)| *a).collect()
    }

    pub fn outcome(&self, axiom: Axiom) -> &AxiomOutcome<V, E> {
        &self.outcomes.iter().find(|(a, _)| *a == axiom).expect("every axiom has an outcome").1
    }
}

/// Vertex sampling for graphs that cannot be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub vertices: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self { vertices: 64, seed: 0 }
    }
}

/// Checks the six axioms and the derived property `M(s, q, t) ⟹ t ⊨ q`.
///
/// Over a finite label lattice every label is used and `probe` is ignored. Otherwise
/// `probe` is required and the check is a necessary-condition check on the probe labels
/// (plus `⊤` and `⊥`). Graphs whose vertices cannot be enumerated are checked on a seeded
/// vertex sample, with edges taken from [`Model::step`].
pub fn check_axioms<M: Model>(
    g: &M,
    probe: Option<&[Label<M>]>,
    sampling: Sampling,
) -> Result<AxiomReport<M::Vertex, Label<M>>> {
    let lat = g.lattice();
    let (labels, finite_labels) = match lat.elements() {
        Some(all) => (all, true),
        None => {
            let probe = probe.ok_or(Error::ProbeRequired)?;
            let mut labels = probe.to_vec();
            labels.push(lat.top());
            labels.push(lat.bottom());
            (labels, false)
        }
    };
    let (vertices, finite_vertices) = match g.vertices() {
        Some(v) => (v, true),
        None => (g.sample_vertices(&labels, sampling.vertices, sampling.seed)?, false),
    };

    let mut verified = Vec::with_capacity(vertices.len());
    for s in &vertices {
        let row = labels.iter().map(|p| g.verifies(s, p)).collect::<Result<Vec<_>>>()?;
        verified.push(row);
    }
    let mut order = vec![false; labels.len() * labels.len()];
    for (i, p) in labels.iter().enumerate() {
        for (j, q) in labels.iter().enumerate() {
            order[i * labels.len() + j] = lat.leq(p, q)?;
        }
    }

    let mut a = AxiomOutcome::pass();
    let mut b = AxiomOutcome::pass();
    let mut c = AxiomOutcome::pass();
    let mut d = AxiomOutcome::pass();
    let mut e = AxiomOutcome::pass();
    let mut f = AxiomOutcome::pass();
    let mut derived = AxiomOutcome::pass();
    let top = lat.top();
    let bottom = lat.bottom();
    let at = |v: &M::Vertex, ls: Vec<Label<M>>| Counterexample { vertex: Some(v.clone()), labels: ls, edge: None };

    for s in &vertices {
        if !g.verifies(s, &top)? {
            a.fail(at(s, vec![top.clone()]));
        }
        if g.verifies(s, &bottom)? {
            b.fail(at(s, vec![bottom.clone()]));
        }
    }

    for (i, p) in labels.iter().enumerate() {
        if lat.is_top(p)? {
            continue;
        }
        if verified.iter().all(|row| row[i]) {
            c.fail(Counterexample { vertex: None, labels: vec![p.clone()], edge: None });
        }
    }

    let mut edges_checked = 0;
    for (si, s) in vertices.iter().enumerate() {
        let row = &verified[si];
        for i in 0..labels.len() {
            if !row[i] {
                continue;
            }
            for j in 0..labels.len() {
                if order[i * labels.len() + j] && !row[j] {
                    d.fail(at(s, vec![labels[i].clone(), labels[j].clone()]));
                }
                if row[j] {
                    let pq = lat.sasaki(&labels[i], &labels[j])?;
                    if !g.verifies(s, &pq)? {
                        e.fail(at(s, vec![labels[i].clone(), labels[j].clone()]));
                    }
                }
            }
        }

        let edges = match g.out_edges(s)? {
            Some(edges) => edges,
            None => {
                let mut edges = Vec::new();
                for q in &labels {
                    if let Some(t) = g.step(s, q)? {
                        edges.push((q.clone(), t));
                    }
                }
                edges
            }
        };
        for (q, t) in &edges {
            edges_checked += 1;
            let edge = || Some((s.clone(), q.clone(), t.clone()));
            if !g.verifies(t, q)? {
                derived.fail(Counterexample { vertex: None, labels: vec![q.clone()], edge: edge() });
            }
            for (i, p) in labels.iter().enumerate() {
                if row[i] && !g.verifies(t, &lat.sasaki(p, q)?)? {
                    f.fail(Counterexample { vertex: None, labels: vec![p.clone()], edge: edge() });
                }
            }
        }
    }

    let enumerable_edges = match vertices.first() {
        Some(v) => g.out_edges(v)?.is_some(),
        None => true,
    };
    Ok(AxiomReport {
        exhaustive: finite_labels && finite_vertices && enumerable_edges,
        vertices_checked: vertices.len(),
        labels_checked: labels.len(),
        edges_checked,
        outcomes: vec![
            (Axiom::VerifiesTop, a),
            (Axiom::NeverVerifiesBottom, b),
            (Axiom::Refutable, c),
            (Axiom::Monotone, d),
            (Axiom::SasakiStable, e),
            (Axiom::Preservation, f),
        ],
        derived,
    })
}

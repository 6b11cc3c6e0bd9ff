//! Small finite graphs that each break a chosen axiom.
//!
//! Axiom (d) cannot be broken alone: with `p ≤ q`, `p & q⊥ = ⊥`, so a vertex verifying
//! `p` but not `q` has a `q⊥` edge whose target must verify `⊥` under (f). Its mutant
//! breaks (d) and (f) together.

use alloc::string::String;
use alloc::vec::Vec;

use super::{Axiom, ExplicitGraph};
use crate::{FiniteOml, LatticeElement, OrthoLattice, Result};

#[derive(Debug, Clone)]
pub struct Mutant {
    pub target: Axiom,
    /// Every axiom the graph fails, `target` included.
    pub expected_failures: Vec<Axiom>,
    pub description: &'static str,
    pub graph: ExplicitGraph<FiniteOml>,
}

pub fn all() -> Result<Vec<Mutant>> {
    Axiom::ALL.into_iter().map(for_axiom).collect()
}

pub fn for_axiom(target: Axiom) -> Result<Mutant> {
    let (graph, description, expected_failures) = match target {
        Axiom::VerifiesTop => (
            a_mutant()?,
            "MO2 lattice graph plus a vertex with self-loops under every label",
            alloc::vec![Axiom::VerifiesTop],
        ),
        Axiom::NeverVerifiesBottom => (
            b_mutant()?,
            "MO2 lattice graph plus a sink vertex reached from a",
            alloc::vec![Axiom::NeverVerifiesBottom],
        ),
        Axiom::Refutable => (
            c_mutant()?,
            "single vertex of B2 with loops labelled 1 and a, so a is never refuted",
            alloc::vec![Axiom::Refutable],
        ),
        Axiom::Monotone => (
            d_mutant()?,
            "B3 lattice graph plus a vertex verifying exactly a and 1",
            alloc::vec![Axiom::Monotone, Axiom::Preservation],
        ),
        Axiom::SasakiStable => (
            e_mutant()?,
            "B2 vertex verifying both atoms but not their meet",
            alloc::vec![Axiom::SasakiStable],
        ),
        Axiom::Preservation => (
            f_mutant()?,
            "MO2 lattice graph plus the edge 1 -a-> b",
            alloc::vec![Axiom::Preservation],
        ),
    };
    Ok(Mutant { target, expected_failures, description, graph })
}

fn el(l: &FiniteOml, name: &str) -> LatticeElement {
    l.element(name).expect("fixture element")
}

fn vertex(g: &ExplicitGraph<FiniteOml>, name: &str) -> usize {
    g.vertex(name).expect("fixture vertex")
}

fn a_mutant() -> Result<ExplicitGraph<FiniteOml>> {
    let l = FiniteOml::mo(2)?;
    let mut g = ExplicitGraph::finite_lattice_graph(&l)?;
    let z = g.add_vertex("z");
    for p in l.iter() {
        g.add_edge(z, p, z)?;
    }
    Ok(g)
}

fn b_mutant() -> Result<ExplicitGraph<FiniteOml>> {
    let l = FiniteOml::mo(2)?;
    let mut g = ExplicitGraph::finite_lattice_graph(&l)?;
    let z = g.add_vertex("z");
    g.add_edge(vertex(&g, "a"), el(&l, "a"), z)?;
    Ok(g)
}

fn c_mutant() -> Result<ExplicitGraph<FiniteOml>> {
    let l = FiniteOml::boolean(2)?;
    let mut g = ExplicitGraph::new(l.clone(), Vec::new(), Vec::new())?;
    let s = g.add_vertex("a");
    g.add_edge(s, l.top(), s)?;
    g.add_edge(s, el(&l, "a"), s)?;
    Ok(g)
}

fn d_mutant() -> Result<ExplicitGraph<FiniteOml>> {
    let l = FiniteOml::boolean(3)?;
    let mut g = ExplicitGraph::finite_lattice_graph(&l)?;
    let z = g.add_vertex("z");
    let skip = [el(&l, "bc"), l.bottom()];
    for r in l.iter().filter(|r| !skip.contains(r)) {
        let target = vertex(&g, l.name(r)?);
        g.add_edge(z, r, target)?;
    }
    Ok(g)
}

fn e_mutant() -> Result<ExplicitGraph<FiniteOml>> {
    let l = FiniteOml::boolean(2)?;
    let mut g = ExplicitGraph::new(l.clone(), Vec::new(), Vec::new())?;
    let s = g.add_vertex("s");
    let w = g.add_vertex("w");
    g.add_edge(s, l.top(), s)?;
    for name in ["a", "b", "1"] {
        g.add_edge(w, el(&l, name), s)?;
    }
    Ok(g)
}

fn f_mutant() -> Result<ExplicitGraph<FiniteOml>> {
    let l = FiniteOml::mo(2)?;
    let mut g = ExplicitGraph::finite_lattice_graph(&l)?;
    g.add_edge(vertex(&g, "1"), el(&l, "a"), vertex(&g, "b"))?;
    Ok(g)
}

/// Names of the vertices of a mutant, for reports.
pub fn vertex_names(m: &Mutant) -> Vec<String> {
    m.graph.names().to_vec()
}

//! Membership of outcome words in the language of a model.
//!
//! A word `p₁…pₙ` is possible when some path of the model carries it. For the canonical
//! models this is decided four ways: the left-associated Sasaki fold
//! `((⊤ & p₁) & p₂) … & pₙ ≠ ⊥`, the projector product `Π_pₙ ⋯ Π_p₁ ≠ 0`, and by walking the
//! Hilbert graph or the lattice graph.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{SymmetricEigen, SVD};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hilbert::{CMat, CVec, HilbertLattice, Subspace};
use crate::models::{ExplicitGraph, HilbertGraph, Label, LatticeGraph, Model, SampleElements};
use crate::{OrthoLattice, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Word<E> {
    pub labels: Vec<E>,
}

impl<E> Word<E> {
    pub fn new(labels: Vec<E>) -> Self {
        Self { labels }
    }

    pub fn empty() -> Self {
        Self { labels: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Vertices `a₀…aₙ` with `M(aₖ₋₁, pₖ, aₖ)` for every `k`.
#[derive(Debug, Clone)]
pub struct PathWitness<V> {
    pub vertices: Vec<V>,
}

#[derive(Debug, Clone)]
pub struct SasakiVerdict<E> {
    pub accepted: bool,
    pub residual: E,
}

/// Folds `m ← m & pₖ` from `m = ⊤`; accepts iff the residual is not `⊥`.
pub fn decide_sasaki<L: OrthoLattice>(lattice: &L, w: &Word<L::Elem>) -> Result<SasakiVerdict<L::Elem>> {
    let mut m = lattice.top();
    for p in &w.labels {
        m = lattice.sasaki(&m, p)?;
    }
    Ok(SasakiVerdict { accepted: !lattice.is_bottom(&m)?, residual: m })
}

#[derive(Debug, Clone)]
pub struct ProjectorVerdict {
    pub accepted: bool,
    /// Largest singular value of `Π_pₙ ⋯ Π_p₁`.
    pub norm: f64,
    /// A unit vector attaining `norm`.
    pub start: CVec,
}

/// Accepts iff the operator norm of `Π_pₙ ⋯ Π_p₁` exceeds the rank tolerance.
pub fn decide_projector(space: &HilbertLattice, w: &Word<Subspace>) -> Result<ProjectorVerdict> {
    let d = space.dim();
    let mut product = CMat::identity(d, d);
    for p in &w.labels {
        product = space.projector(p)? * product;
    }
    let norm = SVD::new(product.clone(), false, false).singular_values.iter().copied().fold(0.0, f64::max);
    // Right singular vectors from the Hermitian eigensolver, which is more accurate here than
    // the SVD's singular vectors.
    let gram = SymmetricEigen::new(product.adjoint() * &product);
    let top = gram.eigenvalues.imax();
    let start = gram.eigenvectors.column(top).into_owned();
    Ok(ProjectorVerdict { accepted: norm > space.tolerances().rank, norm, start })
}

/// Follows `step` from `start`, checking each edge with `has_edge`.
pub fn simulate<M: Model>(g: &M, start: M::Vertex, w: &Word<Label<M>>) -> Result<Option<PathWitness<M::Vertex>>> {
    g.check_vertex(&start)?;
    let mut vertices = vec![start];
    for p in &w.labels {
        let a = vertices.last().expect("path is nonempty");
        let Some(b) = g.step(a, p)? else {
            return Ok(None);
        };
        if !g.has_edge(a, p, &b)? {
            return Ok(None);
        }
        vertices.push(b);
    }
    Ok(Some(PathWitness { vertices }))
}

/// Walks the Hilbert graph from the top right-singular vector of the projector product.
pub fn decide_simulation_hilbert(g: &HilbertGraph, w: &Word<Subspace>) -> Result<Option<PathWitness<CVec>>> {
    let start = decide_projector(g.space(), w)?.start;
    simulate(g, start, w)
}

/// Walks the lattice graph from `⊤`, which has the largest successor at every step.
pub fn decide_simulation_lattice<L: SampleElements>(
    g: &LatticeGraph<L>,
    w: &Word<L::Elem>,
) -> Result<Option<PathWitness<L::Elem>>> {
    simulate(g, g.lattice().top(), w)
}

/// Breadth-first search over every start vertex of a finite graph.
pub fn decide_explicit<L: OrthoLattice>(g: &ExplicitGraph<L>, w: &Word<L::Elem>) -> Result<Option<PathWitness<usize>>> {
    let n = g.len();
    if n == 0 {
        return Ok(None);
    }
    // parents[k][v]: predecessor of v at depth k + 1.
    let mut parents: Vec<Vec<Option<usize>>> = Vec::new();
    let mut frontier: BTreeSet<usize> = (0..n).collect();
    for p in &w.labels {
        let mut layer = vec![None; n];
        let mut next = BTreeSet::new();
        for e in g.edges() {
            if frontier.contains(&e.from) && layer[e.to].is_none() && g.lattice().equal(&e.label, p)? {
                layer[e.to] = Some(e.from);
                next.insert(e.to);
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        parents.push(layer);
        frontier = next;
    }
    let mut v = *frontier.first().expect("frontier is nonempty");
    let mut vertices = vec![v];
    for layer in parents.iter().rev() {
        v = layer[v].expect("every frontier vertex has a parent");
        vertices.push(v);
    }
    vertices.reverse();
    Ok(Some(PathWitness { vertices }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    pub max_len: usize,
    /// Number of sampled words when full enumeration would exceed `enumeration_limit`.
    pub samples: usize,
    pub enumeration_limit: usize,
    pub seed: u64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self { max_len: 4, samples: 500, enumeration_limit: 2000, seed: 0 }
    }
}

/// Verdicts of the deciders on one word, given as alphabet indices.
#[derive(Debug, Clone, PartialEq)]
pub struct WordVerdict {
    pub word: Vec<usize>,
    pub sasaki: bool,
    /// `None` over lattices without projectors.
    pub projector: Option<bool>,
    pub hilbert: Option<bool>,
    pub lattice: bool,
    pub product_norm: Option<f64>,
}

impl WordVerdict {
    pub fn unanimous(&self) -> bool {
        [self.projector, self.hilbert].into_iter().flatten().all(|v| v == self.sasaki) && self.lattice == self.sasaki
    }
}

#[derive(Debug, Clone, Default)]
pub struct EquivalenceReport {
    pub verdicts: Vec<WordVerdict>,
    /// Indices into `verdicts`.
    pub disagreements: Vec<usize>,
    /// The ambient dimension is below 3.
    pub outside_hypothesis: bool,
    pub enumerated: bool,
}

impl EquivalenceReport {
    pub fn agreed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Words of length `1..=max_len` over `k` letters, all of them when there are at most
/// `enumeration_limit`, otherwise `samples` seeded draws with uniform length.
pub fn harness_words(k: usize, config: &HarnessConfig) -> (Vec<Vec<usize>>, bool) {
    if k == 0 || config.max_len == 0 {
        return (Vec::new(), true);
    }
    let mut total = 0usize;
    let mut layer = 1usize;
    for _ in 0..config.max_len {
        layer = layer.saturating_mul(k);
        total = total.saturating_add(layer);
    }
    if total <= config.enumeration_limit {
        let mut words = Vec::with_capacity(total);
        let mut current: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..config.max_len {
            let mut next = Vec::with_capacity(current.len() * k);
            for w in &current {
                for i in 0..k {
                    let mut v = w.clone();
                    v.push(i);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            current = next;
        }
        (words, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let words = (0..config.samples)
            .map(|_| {
                let len = rng.gen_range(1..=config.max_len);
                (0..len).map(|_| rng.gen_range(0..k)).collect()
            })
            .collect();
        (words, false)
    }
}

/// Runs the Sasaki fold, projector product, Hilbert-graph walk and lattice-graph walk on
/// every harness word and records any disagreement.
pub fn equivalence_harness(
    space: &HilbertLattice,
    alphabet: &[Subspace],
    config: &HarnessConfig,
) -> Result<EquivalenceReport> {
    for p in alphabet {
        space.projector(p)?;
    }
    let hg = HilbertGraph::new(space.clone());
    let lg = LatticeGraph::new(space.clone());
    let (words, enumerated) = harness_words(alphabet.len(), config);
    let mut report = EquivalenceReport { outside_hypothesis: space.dim() < 3, enumerated, ..Default::default() };
    for word in words {
        let w = Word::new(word.iter().map(|&i| alphabet[i].clone()).collect());
        let sasaki = decide_sasaki(space, &w)?.accepted;
        let proj = decide_projector(space, &w)?;
        let hilbert = simulate(&hg, proj.start.clone(), &w)?.is_some();
        let lattice = decide_simulation_lattice(&lg, &w)?.is_some();
        let v = WordVerdict {
            word,
            sasaki,
            projector: Some(proj.accepted),
            hilbert: Some(hilbert),
            lattice,
            product_norm: Some(proj.norm),
        };
        if !v.unanimous() {
            report.disagreements.push(report.verdicts.len());
        }
        report.verdicts.push(v);
    }
    Ok(report)
}

/// Two-way harness over a lattice without projectors: Sasaki fold against lattice-graph walk.
pub fn lattice_harness<L: SampleElements + Clone>(
    lattice: &L,
    alphabet: &[L::Elem],
    config: &HarnessConfig,
) -> Result<EquivalenceReport> {
    let lg = LatticeGraph::new(lattice.clone());
    let (words, enumerated) = harness_words(alphabet.len(), config);
    let mut report = EquivalenceReport { enumerated, ..Default::default() };
    for word in words {
        let w = Word::new(word.iter().map(|&i| alphabet[i].clone()).collect());
        let sasaki = decide_sasaki(lattice, &w)?.accepted;
        let lattice_walk = decide_simulation_lattice(&lg, &w)?.is_some();
        let v = WordVerdict { word, sasaki, projector: None, hilbert: None, lattice: lattice_walk, product_norm: None };
        if !v.unanimous() {
            report.disagreements.push(report.verdicts.len());
        }
        report.verdicts.push(v);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{random_subspace, sqrt, unit};
    use crate::FiniteOml;

    fn d2() -> CVec {
        (unit(2, 0) + unit(2, 1)).unscale(sqrt(2.0))
    }

    fn zigzag(h: &HilbertLattice) -> Word<Subspace> {
        Word::new(vec![Subspace::coordinate(2, &[0]), h.ray(&d2()).unwrap(), Subspace::coordinate(2, &[1])])
    }

    #[test]
    fn sasaki_examples() {
        let h = HilbertLattice::new(3).unwrap();
        let p = random_subspace(3, 1, 4).unwrap();
        assert!(decide_sasaki(&h, &Word::new(vec![p.clone(), p.clone()])).unwrap().accepted);
        let q = h.ortho(&p).unwrap();
        assert!(!decide_sasaki(&h, &Word::new(vec![p, q])).unwrap().accepted);

        let h2 = HilbertLattice::new(2).unwrap();
        let v = decide_sasaki(&h2, &zigzag(&h2)).unwrap();
        assert!(v.accepted);
        assert!(h2.equal(&v.residual, &Subspace::coordinate(2, &[1])).unwrap());

        let v = decide_sasaki(&h, &Word::empty()).unwrap();
        assert!(v.accepted && v.residual.is_full());
    }

    #[test]
    fn projector_examples() {
        let h = HilbertLattice::new(3).unwrap();
        let p = random_subspace(3, 2, 9).unwrap();
        assert!(decide_projector(&h, &Word::new(vec![p.clone()])).unwrap().accepted);
        let v = decide_projector(&h, &Word::new(vec![p.clone(), h.ortho(&p).unwrap()])).unwrap();
        assert!(!v.accepted && v.norm < 1e-12);

        let h2 = HilbertLattice::new(2).unwrap();
        let v = decide_projector(&h2, &zigzag(&h2)).unwrap();
        assert!(v.accepted);
        assert!((v.norm - 0.5).abs() < 1e-12);
        let empty = decide_projector(&h, &Word::empty()).unwrap();
        assert!(empty.accepted && (empty.norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simulation_examples() {
        let h = HilbertLattice::new(3).unwrap();
        let hg = HilbertGraph::new(h.clone());
        let path = decide_simulation_hilbert(&hg, &Word::empty()).unwrap().unwrap();
        assert_eq!(path.vertices.len(), 1);

        let p = random_subspace(3, 1, 2).unwrap();
        let path = decide_simulation_hilbert(&hg, &Word::new(vec![p.clone(), p.clone()])).unwrap().unwrap();
        assert_eq!(path.vertices.len(), 3);
        assert!((&path.vertices[1] - &path.vertices[2]).norm() < 1e-10);
        assert!(hg.verifies(&path.vertices[1], &p).unwrap());

        let w = Word::new(vec![p.clone(), h.ortho(&p).unwrap()]);
        assert!(decide_simulation_hilbert(&hg, &w).unwrap().is_none());
        assert!(decide_simulation_lattice(&LatticeGraph::new(h), &w).unwrap().is_none());
    }

    #[test]
    fn explicit_search_matches_lattice_graph() {
        let l = FiniteOml::mo(2).unwrap();
        let g = ExplicitGraph::finite_lattice_graph(&l).unwrap();
        let lg = LatticeGraph::new(l.clone());
        let alphabet: Vec<_> = l.iter().collect();
        let (words, _) = harness_words(alphabet.len(), &HarnessConfig { max_len: 3, ..Default::default() });
        for word in words {
            let w = Word::new(word.iter().map(|&i| alphabet[i]).collect());
            let path = decide_explicit(&g, &w).unwrap();
            assert_eq!(path.is_some(), decide_simulation_lattice(&lg, &w).unwrap().is_some());
            if let Some(path) = path {
                for (k, p) in w.labels.iter().enumerate() {
                    assert!(g.has_edge(&path.vertices[k], p, &path.vertices[k + 1]).unwrap());
                }
            }
        }
        assert_eq!(decide_explicit(&g, &Word::empty()).unwrap().unwrap().vertices.len(), 1);
    }

    #[test]
    fn harness_examples() {
        let h = HilbertLattice::new(3).unwrap();
        let p = random_subspace(3, 1, 1).unwrap();
        let cfg = HarnessConfig { max_len: 3, ..Default::default() };
        let r = equivalence_harness(&h, &[p], &cfg).unwrap();
        assert_eq!(r.verdicts.len(), 3);
        assert!(r.agreed() && r.enumerated && !r.outside_hypothesis);
        assert!(r.verdicts.iter().all(|v| v.sasaki));

        let alphabet = [Subspace::coordinate(3, &[0]), Subspace::coordinate(3, &[1])];
        let r = equivalence_harness(&h, &alphabet, &HarnessConfig { max_len: 2, ..Default::default() }).unwrap();
        assert!(r.agreed());
        for v in &r.verdicts {
            assert_eq!(v.sasaki, v.word.iter().all(|&i| i == v.word[0]));
        }

        let h2 = HilbertLattice::new(2).unwrap();
        let r = equivalence_harness(&h2, &[Subspace::coordinate(2, &[0])], &cfg).unwrap();
        assert!(r.outside_hypothesis && r.agreed());
    }

    #[test]
    fn lattice_harness_on_mo3() {
        let l = FiniteOml::mo(3).unwrap();
        let alphabet: Vec<_> = l.iter().collect();
        let r = lattice_harness(&l, &alphabet, &HarnessConfig { max_len: 3, ..Default::default() }).unwrap();
        assert!(r.enumerated && r.agreed());
    }

    #[test]
    fn sampled_words_are_seeded() {
        let cfg = HarnessConfig { max_len: 6, samples: 50, enumeration_limit: 10, seed: 3 };
        let (a, enumerated) = harness_words(4, &cfg);
        assert!(!enumerated);
        assert_eq!(a, harness_words(4, &cfg).0);
        assert!(a.iter().all(|w| (1..=6).contains(&w.len())));
    }
}

mod common;

use common::{alphabet, commutator, mixed_pair, projector, range_projector, rng};
use proptest::prelude::*;
use qlogic::filters::{closure_finite, filter_law_violations};
use qlogic::hilbert::{random_subspace_with, random_unitary};
use qlogic::language::{decide_projector, decide_sasaki, decide_simulation_hilbert, decide_simulation_lattice, Word};
use qlogic::models::{check_axioms, Axiom, Edge, ExplicitGraph, HilbertGraph, LatticeGraph, Sampling};
use qlogic::observables::{eigenspaces, validate_observable};
use qlogic::{CMat, Complex64, Error, FiniteOml, HilbertLattice, OrthoLattice};

fn fixture(k: usize) -> FiniteOml {
    match k % 4 {
        0 => FiniteOml::mo(2).unwrap(),
        1 => FiniteOml::mo(3).unwrap(),
        2 => FiniteOml::boolean(3).unwrap(),
        _ => FiniteOml::boolean(2).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn compatibility_routes_agree(seed in any::<u64>(), d in 2usize..=4) {
        let space = HilbertLattice::new(d).unwrap();
        let (p, q) = mixed_pair(&space, seed);
        match space.compat_report(&p, &q) {
            Err(Error::AmbiguousSpectrum { .. }) => {}
            Err(e) => panic!("{e}"),
            Ok(r) => {
                let eq = space.tolerances().eq;
                prop_assert_eq!(r.compatible, commutator(&projector(&p), &projector(&q)) < eq);
                let s = space.sasaki(&p, &q).unwrap();
                let m = space.meet(&p, &q).unwrap();
                prop_assert_eq!(r.compatible, space.equal(&s, &m).unwrap());
                prop_assert_eq!(r.compatible, space.compatible(&q, &p).unwrap());
            }
        }
    }

    #[test]
    fn sasaki_routes_agree(seed in any::<u64>(), d in 2usize..=4) {
        let space = HilbertLattice::new(d).unwrap();
        let (p, q) = mixed_pair(&space, seed);
        for (x, y) in [(&p, &q), (&q, &p)] {
            let image = space.sasaki(x, y).unwrap();
            let formula = space.sasaki_formula(x, y).unwrap();
            prop_assert!(space.projector_distance(&image, &formula).unwrap() < 1e-7);
            let oracle = range_projector(&(projector(y) * x.basis()), 1e-6);
            prop_assert!((projector(&image) - oracle).norm() < 1e-7);
            prop_assert!(space.leq(&image, y).unwrap());
        }
    }

    #[test]
    fn hilbert_ortholattice_laws(seed in any::<u64>(), d in 2usize..=4) {
        let space = HilbertLattice::new(d).unwrap();
        let (p, q) = mixed_pair(&space, seed);
        let pp = space.ortho(&p).unwrap();
        prop_assert!(space.equal(&space.ortho(&pp).unwrap(), &p).unwrap());
        prop_assert!(space.meet(&p, &pp).unwrap().is_zero());
        prop_assert!(space.join(&p, &pp).unwrap().is_full());
        let lhs = space.ortho(&space.join(&p, &q).unwrap()).unwrap();
        let rhs = space.meet(&pp, &space.ortho(&q).unwrap()).unwrap();
        prop_assert!(space.equal(&lhs, &rhs).unwrap());
        // mixed_pair puts p below q in one case out of three.
        if space.leq(&p, &q).unwrap() {
            let back = space.join(&p, &space.meet(&q, &pp).unwrap()).unwrap();
            prop_assert!(space.projector_distance(&back, &q).unwrap() < 1e-7);
        }
    }

    #[test]
    fn finite_sasaki_laws(k in 0usize..4, i in 0usize..64, j in 0usize..64) {
        let l = fixture(k);
        let p = l.element_at(i % l.len()).unwrap();
        let q = l.element_at(j % l.len()).unwrap();
        let s = l.sasaki(&p, &q).unwrap();
        prop_assert!(l.leq(&s, &q).unwrap());
        if l.leq(&p, &q).unwrap() {
            prop_assert_eq!(s, p);
            let back = l.join(&p, &l.meet(&q, &l.ortho(&p).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(back, q);
        }
        prop_assert_eq!(l.compatible(&p, &q).unwrap(), s == l.meet(&p, &q).unwrap());
        prop_assert!(l.compatible(&p, &l.ortho(&p).unwrap()).unwrap());
    }

    #[test]
    fn finite_closure_is_a_filter(k in 0usize..4, gens in prop::collection::vec(0usize..64, 1..4)) {
        let l = fixture(k);
        let gens: Vec<_> = gens.iter().map(|&g| l.element_at(g % l.len()).unwrap()).collect();
        let c = closure_finite(&l, &gens).unwrap();
        prop_assert!(filter_law_violations(&l, &c).unwrap().is_empty());
        prop_assert!(gens.iter().all(|g| c.contains(g)));
        prop_assert_eq!(closure_finite(&l, &c).unwrap(), c);
    }

    #[test]
    fn eigenspaces_form_an_observable(seed in any::<u64>(), d in 2usize..=4, pattern in prop::collection::vec(0u8..3, 4)) {
        let space = HilbertLattice::new(d).unwrap();
        let u = random_unitary(&mut rng(seed), d);
        let diag = CMat::from_diagonal(&qlogic::CVec::from_iterator(d, pattern.iter().take(d).map(|&x| Complex64::new(f64::from(x), 0.0))));
        let h = &u * diag * u.adjoint();
        let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
        let o = eigenspaces(&space, &h).unwrap();
        prop_assert!(validate_observable(&space, &o).unwrap().is_valid());
        let distinct: std::collections::BTreeSet<_> = pattern.iter().take(d).collect();
        prop_assert_eq!(o.len(), distinct.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn language_properties(seed in any::<u64>(), d in 3usize..=4, word in prop::collection::vec(0usize..3, 0..6)) {
        let space = HilbertLattice::new(d).unwrap();
        let letters = alphabet(&space, seed);
        let w = Word::new(word.iter().map(|&i| letters[i].clone()).collect());
        let verdict = decide_sasaki(&space, &w).unwrap().accepted;
        prop_assert_eq!(verdict, decide_projector(&space, &w).unwrap().accepted);
        let hg = HilbertGraph::new(space.clone());
        prop_assert_eq!(verdict, decide_simulation_hilbert(&hg, &w).unwrap().is_some());
        prop_assert_eq!(verdict, decide_simulation_lattice(&LatticeGraph::new(space.clone()), &w).unwrap().is_some());

        for n in 0..w.len() {
            let prefix = Word::new(w.labels[..n].to_vec());
            if verdict {
                prop_assert!(decide_sasaki(&space, &prefix).unwrap().accepted);
            }
        }
        let mut with_top = w.clone();
        with_top.labels.push(space.top());
        prop_assert_eq!(verdict, decide_sasaki(&space, &with_top).unwrap().accepted);
        let mut with_bottom = w.clone();
        with_bottom.labels.insert(w.len() / 2, space.bottom());
        prop_assert!(!decide_sasaki(&space, &with_bottom).unwrap().accepted);
        prop_assert!(!decide_projector(&space, &with_bottom).unwrap().accepted);
        if !verdict {
            let mut longer = w.clone();
            longer.labels.push(letters[seed as usize % 3].clone());
            prop_assert!(!decide_sasaki(&space, &longer).unwrap().accepted);
        }
    }

    /// No graph fails (d) alone: a (d) failure always comes with a (b) or (f) failure.
    #[test]
    fn monotonicity_failure_implies_b_or_f(
        k in 0usize..4,
        n in 1usize..4,
        edges in prop::collection::vec((0usize..4, 0usize..64, 0usize..4), 0..24),
    ) {
        let l = fixture(k);
        let names = (0..n).map(|i| format!("v{i}")).collect();
        let edges = edges
            .into_iter()
            .map(|(a, p, b)| Edge { from: a % n, label: l.element_at(p % l.len()).unwrap(), to: b % n })
            .collect();
        let g = ExplicitGraph::new(l, names, edges).unwrap();
        let r = check_axioms(&g, None, Sampling::default()).unwrap();
        let failed = r.failed_axioms();
        if failed.contains(&Axiom::Monotone) {
            prop_assert!(failed.contains(&Axiom::NeverVerifiesBottom) || failed.contains(&Axiom::Preservation));
        }
        if !failed.contains(&Axiom::VerifiesTop) && !failed.contains(&Axiom::Preservation) {
            prop_assert!(r.derived.passed);
        }
    }
}

#[test]
fn random_subspaces_have_requested_rank() {
    let mut g = rng(11);
    for d in 1..=5 {
        for r in 0..=d {
            assert_eq!(random_subspace_with(&mut g, d, r).unwrap().dim(), r);
        }
    }
}

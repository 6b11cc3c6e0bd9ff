//! Finite orthomodular lattices given by explicit tables.
//!
//! A [`FiniteOml`] is built from element names, a list of order pairs (closed
//! reflexively and transitively) and an orthocomplement map. Meet and join tables are
//! derived from the order at construction. Construction only requires a bounded lattice;
//! the orthocomplement and orthomodular laws are checked by [`FiniteOml::validate`],
//! which reports every violated instance.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicUsize, Ordering};

use crate::{Error, OrthoLattice, Result};

static NEXT_ID: AtomicUsize = AtomicUsize::new(1);

/// Handle to an element of one [`FiniteOml`] instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeElement {
    lattice: usize,
    index: usize,
}

impl LatticeElement {
    /// Position of the element within its lattice.
    pub fn index(self) -> usize {
        self.index
    }
}

#[derive(Debug, Clone)]
pub struct FiniteOml {
    id: usize,
    names: Vec<String>,
    leq: Vec<bool>,
    ortho: Vec<usize>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteOml {
    /// Upper bound on the number of elements.
    pub const MAX_ELEMENTS: usize = 256;

    /// Builds a lattice from names, order pairs `(lower, upper)` and the orthocomplement
    /// of each element (`ortho[i]` is the index of the complement of element `i`).
    pub fn new(names: Vec<String>, leq_pairs: &[(usize, usize)], ortho: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n < 2 {
            return Err(Error::MalformedLattice("a lattice needs distinct ⊥ and ⊤".into()));
        }
        if n > Self::MAX_ELEMENTS {
            return Err(Error::MalformedLattice(format!("{n} elements exceeds the maximum of {}", Self::MAX_ELEMENTS)));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::MalformedLattice(format!("duplicate element name `{name}`")));
            }
        }
        if ortho.len() != n {
            return Err(Error::MalformedLattice(format!("orthocomplement map has {} entries for {n} elements", ortho.len())));
        }
        if let Some(&bad) = ortho.iter().find(|&&j| j >= n) {
            return Err(Error::MalformedLattice(format!("orthocomplement index {bad} out of range")));
        }

        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in leq_pairs {
            if a >= n || b >= n {
                return Err(Error::MalformedLattice(format!("order pair ({a}, {b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::MalformedLattice(format!(
                        "order is not antisymmetric: `{}` and `{}` are mutually below each other",
                        names[i], names[j]
                    )));
                }
            }
        }

        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| leq[b * n + x]))
            .ok_or_else(|| Error::MalformedLattice("no least element".into()))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x * n + t]))
            .ok_or_else(|| Error::MalformedLattice("no greatest element".into()))?;

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for p in 0..n {
            for q in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&x| leq[x * n + p] && leq[x * n + q]).collect();
                let glb = lower.iter().copied().find(|&m| lower.iter().all(|&x| leq[x * n + m]));
                let upper: Vec<usize> = (0..n).filter(|&x| leq[p * n + x] && leq[q * n + x]).collect();
                let lub = upper.iter().copied().find(|&m| upper.iter().all(|&x| leq[m * n + x]));
                match (glb, lub) {
                    (Some(g), Some(l)) => {
                        meet[p * n + q] = g;
                        join[p * n + q] = l;
                    }
                    _ => {
                        return Err(Error::MalformedLattice(format!(
                            "`{}` and `{}` have no {}",
                            names[p],
                            names[q],
                            if glb.is_none() { "greatest lower bound" } else { "least upper bound" }
                        )))
                    }
                }
            }
        }

        Ok(Self {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            names,
            leq,
            ortho,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Builds a lattice from element names. `ortho` may list each complementary pair once.
    pub fn from_names(elements: &[&str], leq: &[(&str, &str)], ortho: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::MalformedLattice(format!("unknown element `{s}`")))
        };
        let pairs = leq.iter().map(|&(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
        let mut map: Vec<Option<usize>> = vec![None; names.len()];
        for &(a, b) in ortho {
            let (a, b) = (idx(a)?, idx(b)?);
            for (x, y) in [(a, b), (b, a)] {
                match map[x] {
                    Some(prev) if prev != y => {
                        return Err(Error::MalformedLattice(format!(
                            "conflicting orthocomplements for `{}`",
                            names[x]
                        )))
                    }
                    _ => map[x] = Some(y),
                }
            }
        }
        let ortho = map
            .iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| Error::MalformedLattice(format!("`{}` has no orthocomplement", names[i]))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, &pairs, ortho)
    }

    /// Boolean lattice of subsets of `atoms` atoms (`atoms ≤ 6`). Element names are the
    /// letters of the atoms they contain; `0` and `1` name the bounds.
    pub fn boolean(atoms: usize) -> Result<Self> {
        if atoms == 0 || atoms > 6 {
            return Err(Error::MalformedLattice(format!("boolean lattice with {atoms} atoms")));
        }
        let n = 1usize << atoms;
        let full = n - 1;
        let names = (0..n)
            .map(|mask| match mask {
                0 => "0".to_string(),
                m if m == full => "1".to_string(),
                m => (0..atoms).filter(|i| m & (1 << i) != 0).map(|i| (b'a' + i as u8) as char).collect(),
            })
            .collect();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a & b == a {
                    pairs.push((a, b));
                }
            }
        }
        let ortho = (0..n).map(|m| full & !m).collect();
        Self::new(names, &pairs, ortho)
    }

    /// `MO_k`: `k` Boolean blocks `{x, x'}` glued at their bounds (`1 ≤ k ≤ 13`).
    pub fn mo(k: usize) -> Result<Self> {
        if k == 0 || k > 13 {
            return Err(Error::MalformedLattice(format!("MO_{k} is not supported")));
        }
        let mut names = vec!["0".to_string(), "1".to_string()];
        let mut ortho = vec![1, 0];
        let mut pairs = Vec::new();
        for i in 0..k {
            let letter = (b'a' + i as u8) as char;
            let base = names.len();
            names.push(format!("{letter}"));
            names.push(format!("{letter}'"));
            ortho.push(base + 1);
            ortho.push(base);
            for x in [base, base + 1] {
                pairs.push((0, x));
                pairs.push((x, 1));
            }
        }
        Self::new(names, &pairs, ortho)
    }

    /// The hexagon `O6`: an ortholattice with `a ≤ b` that is not orthomodular.
    pub fn hexagon() -> Result<Self> {
        Self::from_names(
            &["0", "a", "b", "b'", "a'", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")],
            &[("0", "1"), ("a", "a'"), ("b", "b'")],
        )
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn element(&self, name: &str) -> Option<LatticeElement> {
        self.names.iter().position(|n| n == name).map(|index| self.at(index))
    }

    pub fn element_at(&self, index: usize) -> Option<LatticeElement> {
        (index < self.len()).then(|| self.at(index))
    }

    pub fn name(&self, e: LatticeElement) -> Result<&str> {
        Ok(&self.names[self.check(e)?])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn iter(&self) -> impl Iterator<Item = LatticeElement> + '_ {
        (0..self.len()).map(|i| self.at(i))
    }

    /// Elements covering ⊥.
    pub fn atoms(&self) -> Vec<LatticeElement> {
        (0..self.len()).filter(|&i| self.is_atom_index(i)).map(|i| self.at(i)).collect()
    }

    /// Covering pairs `(lower, upper)`, i.e. the edges of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.le(a, b)
                    && !(0..n).any(|c| c != a && c != b && self.le(a, c) && self.le(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Orthocomplement table by index.
    pub fn ortho_table(&self) -> &[usize] {
        &self.ortho
    }

    /// Same element names, order and orthocomplement (instance identity is ignored).
    pub fn same_structure(&self, other: &Self) -> bool {
        self.names == other.names && self.leq == other.leq && self.ortho == other.ortho
    }

    /// Whether `e` belongs to this lattice instance.
    pub fn owns(&self, e: LatticeElement) -> bool {
        e.lattice == self.id && e.index < self.len()
    }

    fn at(&self, index: usize) -> LatticeElement {
        LatticeElement { lattice: self.id, index }
    }

    fn check(&self, e: LatticeElement) -> Result<usize> {
        if self.owns(e) {
            Ok(e.index)
        } else {
            Err(Error::MixedLattice)
        }
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    fn meet_ix(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    fn join_ix(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    fn is_atom_index(&self, i: usize) -> bool {
        i != self.bottom && (0..self.len()).all(|x| x == i || x == self.bottom || !self.le(x, i))
    }

    /// Checks every instance of the ortholattice and orthomodular laws.
    pub fn validate(&self) -> OmlReport {
        let n = self.len();
        let mut violations = Vec::new();
        let name = |i: usize| self.names[i].clone();

        for a in 0..n {
            if !self.le(a, a) {
                violations.push(OmlViolation::NotReflexive(name(a)));
            }
            for b in 0..n {
                if a < b && self.le(a, b) && self.le(b, a) {
                    violations.push(OmlViolation::NotAntisymmetric(name(a), name(b)));
                }
                for c in 0..n {
                    if self.le(a, b) && self.le(b, c) && !self.le(a, c) {
                        violations.push(OmlViolation::NotTransitive(name(a), name(b), name(c)));
                    }
                }
            }
        }
        for p in 0..n {
            let pp = self.ortho[p];
            if self.ortho[pp] != p {
                violations.push(OmlViolation::NotInvolution(name(p)));
            }
            if self.meet_ix(p, pp) != self.bottom || self.join_ix(p, pp) != self.top {
                violations.push(OmlViolation::NotComplement(name(p)));
            }
            for q in 0..n {
                let qp = self.ortho[q];
                if self.le(p, q) && !self.le(qp, pp) {
                    violations.push(OmlViolation::NotAntitone(name(p), name(q)));
                }
                if self.ortho[self.join_ix(p, q)] != self.meet_ix(pp, qp) {
                    violations.push(OmlViolation::DeMorgan(name(p), name(q)));
                }
                if self.le(p, q) && self.join_ix(p, self.meet_ix(q, pp)) != q {
                    violations.push(OmlViolation::Orthomodular(name(p), name(q)));
                }
            }
        }
        OmlReport { violations }
    }
}

impl OrthoLattice for FiniteOml {
    type Elem = LatticeElement;

    fn bottom(&self) -> LatticeElement {
        self.at(self.bottom)
    }

    fn top(&self) -> LatticeElement {
        self.at(self.top)
    }

    fn leq(&self, p: &LatticeElement, q: &LatticeElement) -> Result<bool> {
        Ok(self.le(self.check(*p)?, self.check(*q)?))
    }

    fn meet(&self, p: &LatticeElement, q: &LatticeElement) -> Result<LatticeElement> {
        Ok(self.at(self.meet_ix(self.check(*p)?, self.check(*q)?)))
    }

    fn join(&self, p: &LatticeElement, q: &LatticeElement) -> Result<LatticeElement> {
        Ok(self.at(self.join_ix(self.check(*p)?, self.check(*q)?)))
    }

    fn ortho(&self, p: &LatticeElement) -> Result<LatticeElement> {
        Ok(self.at(self.ortho[self.check(*p)?]))
    }

    fn is_atom(&self, p: &LatticeElement) -> Result<bool> {
        Ok(self.is_atom_index(self.check(*p)?))
    }

    fn elements(&self) -> Option<Vec<LatticeElement>> {
        Some(self.iter().collect())
    }

    fn equal(&self, p: &LatticeElement, q: &LatticeElement) -> Result<bool> {
        Ok(self.check(*p)? == self.check(*q)?)
    }
}

/// Law violated by a finite lattice; element names identify the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmlViolation {
    NotReflexive(String),
    NotAntisymmetric(String, String),
    NotTransitive(String, String, String),
    NotInvolution(String),
    /// `p ∧ p⊥ ≠ ⊥` or `p ∨ p⊥ ≠ ⊤`.
    NotComplement(String),
    /// `p ≤ q` but not `q⊥ ≤ p⊥`.
    NotAntitone(String, String),
    /// `(p ∨ q)⊥ ≠ p⊥ ∧ q⊥`.
    DeMorgan(String, String),
    /// `p ≤ q` but `q ≠ p ∨ (q ∧ p⊥)`.
    Orthomodular(String, String),
}

impl fmt::Display for OmlViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotReflexive(a) => write!(f, "order not reflexive at `{a}`"),
            Self::NotAntisymmetric(a, b) => write!(f, "order not antisymmetric on `{a}`, `{b}`"),
            Self::NotTransitive(a, b, c) => write!(f, "order not transitive on `{a}` ≤ `{b}` ≤ `{c}`"),
            Self::NotInvolution(a) => write!(f, "orthocomplement is not an involution at `{a}`"),
            Self::NotComplement(a) => write!(f, "`{a}` and its orthocomplement are not complements"),
            Self::NotAntitone(a, b) => write!(f, "`{a}` ≤ `{b}` but their orthocomplements are not reversed"),
            Self::DeMorgan(a, b) => write!(f, "De Morgan law fails for `{a}`, `{b}`"),
            Self::Orthomodular(a, b) => write!(f, "orthomodular law fails: `{a}` ≤ `{b}` but `{b}` ≠ `{a}` ∨ (`{b}` ∧ `{a}`⊥)"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OmlReport {
    pub violations: Vec<OmlViolation>,
}

impl OmlReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mo2() -> FiniteOml {
        FiniteOml::mo(2).unwrap()
    }

    fn el(l: &FiniteOml, name: &str) -> LatticeElement {
        l.element(name).unwrap()
    }

    #[test]
    fn meet_examples() {
        let l = mo2();
        for q in l.iter() {
            assert_eq!(l.meet(&l.top(), &q).unwrap(), q);
            assert_eq!(l.meet(&q, &l.ortho(&q).unwrap()).unwrap(), l.bottom());
        }
        assert_eq!(l.meet(&el(&l, "a"), &el(&l, "b")).unwrap(), l.bottom());
    }

    #[test]
    fn sasaki_examples() {
        let l = mo2();
        for q in l.iter() {
            assert_eq!(l.sasaki(&l.top(), &q).unwrap(), q);
        }
        assert_eq!(l.sasaki(&el(&l, "a"), &el(&l, "b")).unwrap(), el(&l, "b"));
        assert_eq!(l.sasaki(&el(&l, "b"), &el(&l, "a")).unwrap(), el(&l, "a"));
        assert_eq!(l.sasaki(&el(&l, "a"), &el(&l, "a'")).unwrap(), l.bottom());
    }

    #[test]
    fn compatible_examples() {
        let l = mo2();
        for p in l.iter() {
            assert!(l.compatible(&p, &l.top()).unwrap());
            assert!(l.compatible(&p, &l.ortho(&p).unwrap()).unwrap());
        }
        assert!(!l.compatible(&el(&l, "a"), &el(&l, "b")).unwrap());
        assert!(!l.compatible(&el(&l, "b"), &el(&l, "a'")).unwrap());
    }

    #[test]
    fn fixtures_validate() {
        for k in 1..=4 {
            let b = FiniteOml::boolean(k).unwrap();
            assert_eq!(b.len(), 1 << k);
            assert!(b.validate().is_valid(), "B(2^{k})");
        }
        for k in 1..=3 {
            let m = FiniteOml::mo(k).unwrap();
            assert_eq!(m.len(), 2 * k + 2);
            assert!(m.validate().is_valid(), "MO_{k}");
        }
    }

    #[test]
    fn hexagon_is_not_orthomodular() {
        let o6 = FiniteOml::hexagon().unwrap();
        let report = o6.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().all(|v| matches!(v, OmlViolation::Orthomodular(..))));
        assert!(report
            .violations
            .contains(&OmlViolation::Orthomodular("a".into(), "b".into())));
    }

    #[test]
    fn bad_ortho_is_reported() {
        // Chain 0 < x < 1 with x its own complement.
        let l = FiniteOml::from_names(&["0", "x", "1"], &[("0", "x"), ("x", "1")], &[("0", "1"), ("x", "x")]).unwrap();
        let report = l.validate();
        assert!(report.violations.contains(&OmlViolation::NotComplement("x".into())));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            FiniteOml::from_names(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b")], &[("0", "1"), ("a", "b")]),
            Err(Error::MalformedLattice(_))
        ));
        assert!(matches!(
            FiniteOml::from_names(&["0", "a", "1"], &[("0", "a"), ("a", "0"), ("a", "1")], &[("0", "1"), ("a", "a")]),
            Err(Error::MalformedLattice(_))
        ));
        assert!(matches!(
            FiniteOml::from_names(&["0", "1"], &[("0", "1")], &[]),
            Err(Error::MalformedLattice(_))
        ));
    }

    #[test]
    fn mixed_lattices_are_rejected() {
        let a = mo2();
        let b = mo2();
        assert_eq!(a.meet(&a.top(), &b.top()), Err(Error::MixedLattice));
        assert_eq!(a.sasaki(&b.bottom(), &a.top()), Err(Error::MixedLattice));
        assert!(a.same_structure(&b));
    }

    #[test]
    fn atoms_and_covers() {
        let b3 = FiniteOml::boolean(3).unwrap();
        let names: Vec<&str> = b3.atoms().into_iter().map(|a| b3.name(a).unwrap()).collect();
        assert_eq!(names, ["a", "b", "c"]);
        assert_eq!(b3.covers().len(), 12);
        assert_eq!(mo2().atoms().len(), 4);
    }

    #[test]
    fn lattice_laws_on_fixtures() {
        let fixtures = [FiniteOml::boolean(3).unwrap(), FiniteOml::boolean(4).unwrap(), FiniteOml::mo(3).unwrap()];
        for l in &fixtures {
            for p in l.iter() {
                let pp = l.ortho(&p).unwrap();
                assert_eq!(l.ortho(&pp).unwrap(), p);
                assert_eq!(l.sasaki(&p, &l.top()).unwrap(), p);
                for q in l.iter() {
                    let s = l.sasaki(&p, &q).unwrap();
                    assert!(l.leq(&s, &q).unwrap());
                    assert_eq!(l.leq(&p, &q).unwrap(), l.leq(&l.ortho(&q).unwrap(), &pp).unwrap());
                    assert_eq!(l.compatible(&p, &q).unwrap(), l.compatible(&q, &p).unwrap());
                    if l.compatible(&p, &q).unwrap() {
                        assert_eq!(s, l.meet(&p, &q).unwrap());
                    }
                }
            }
        }
    }
}

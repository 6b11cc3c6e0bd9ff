use core::fmt::Debug;

use crate::Result;

/// An orthomodular lattice with fallible operations.
///
/// Operations fail when their arguments do not belong to this lattice (a different
/// finite instance, or a different ambient dimension). The provided `sasaki` and
/// `compatible` methods use the lattice formulas; implementations may override them
/// with an equivalent faster or more accurate route.
pub trait OrthoLattice {
    type Elem: Clone + Debug;

    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;

    fn leq(&self, p: &Self::Elem, q: &Self::Elem) -> Result<bool>;
    fn meet(&self, p: &Self::Elem, q: &Self::Elem) -> Result<Self::Elem>;
    fn join(&self, p: &Self::Elem, q: &Self::Elem) -> Result<Self::Elem>;
    fn ortho(&self, p: &Self::Elem) -> Result<Self::Elem>;

    /// Minimal nonzero element.
    fn is_atom(&self, p: &Self::Elem) -> Result<bool>;

    /// All elements, when the lattice is finite.
    fn elements(&self) -> Option<alloc::vec::Vec<Self::Elem>> {
        None
    }

    fn equal(&self, p: &Self::Elem, q: &Self::Elem) -> Result<bool> {
        Ok(self.leq(p, q)? && self.leq(q, p)?)
    }

    fn is_bottom(&self, p: &Self::Elem) -> Result<bool> {
        self.leq(p, &self.bottom())
    }

    fn is_top(&self, p: &Self::Elem) -> Result<bool> {
        self.leq(&self.top(), p)
    }

    /// `p & q = q ∧ (p ∨ q⊥)`; always below `q`.
    fn sasaki(&self, p: &Self::Elem, q: &Self::Elem) -> Result<Self::Elem> {
        let q_perp = self.ortho(q)?;
        self.meet(q, &self.join(p, &q_perp)?)
    }

    /// `p = (p ∧ q) ∨ (p ∧ q⊥)`.
    fn compatible(&self, p: &Self::Elem, q: &Self::Elem) -> Result<bool> {
        let q_perp = self.ortho(q)?;
        let split = self.join(&self.meet(p, q)?, &self.meet(p, &q_perp)?)?;
        self.equal(p, &split)
    }

    /// `p ≤ q⊥`.
    fn orthogonal(&self, p: &Self::Elem, q: &Self::Elem) -> Result<bool> {
        self.leq(p, &self.ortho(q)?)
    }
}

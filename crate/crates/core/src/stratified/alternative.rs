//! Describing a model by its restriction maps instead of its preorders.

use std::sync::Arc;

use super::axioms::{check_axioms, Axiom, AxiomReport};
use super::StratifiedLattice;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::relation::Relation;

/// Extracts `x ↦ x|_α`, checks B1 to B4 (and B2* for strong models), rebuilds the
/// preorders by `x ⊑'_α y ⇔ x|_α ≤ y|_α ∧ ∀β<α x|_β = y|_β`, and compares them
/// with the originals (report `D`). Report `C` checks that the extracted maps
/// are the restrictions of the rebuilt relations.
pub fn b_axiomatization_round_trip(s: &StratifiedLattice) -> Vec<AxiomReport> {
    let strong = check_axioms(s, &[Axiom::A4Star])[0].holds;
    let mut axioms = vec![Axiom::B1, Axiom::B2, Axiom::B3, Axiom::B4];
    if strong {
        axioms.push(Axiom::B2Star);
    }
    axioms.extend([Axiom::D, Axiom::C]);
    check_axioms(s, &axioms)
}

impl StratifiedLattice {
    /// Builds a depth-`D` structure from `D` restriction maps via
    /// `x ⊑_α y ⇔ x|_α ≤ y|_α ∧ ∀β<α x|_β = y|_β`. Fails when the implied
    /// relation at level `D` is not the identity.
    pub fn from_restrictions(lattice: Arc<FiniteLattice>, maps: &[Vec<usize>]) -> Result<Self> {
        let n = lattice.len();
        if maps.iter().any(|m| m.len() != n || m.iter().any(|&y| y >= n)) {
            return Err(Error::MalformedMap);
        }
        let rel = |alpha: usize| {
            Relation::from_fn(n, |x, y| {
                let r = |z: usize, a: usize| if a < maps.len() { maps[a][z] } else { z };
                lattice.leq(r(x, alpha), r(y, alpha)) && (0..alpha).all(|b| r(x, b) == r(y, b))
            })
        };
        let preorders: Vec<Relation> = (0..maps.len()).map(rel).collect();
        if rel(maps.len()) != Relation::identity(n) {
            return Err(Error::PreconditionViolated(
                "restriction maps do not separate points at the top level".into(),
            ));
        }
        StratifiedLattice::new(lattice, preorders)
    }

    /// The restriction maps `x ↦ x|_α` for `α < D`.
    pub fn restriction_maps(&self) -> Vec<Vec<usize>> {
        (0..self.depth())
            .map(|a| self.elements().map(|x| self.res(x, a)).collect())
            .collect()
    }
}

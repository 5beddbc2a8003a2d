//! Maps between finite lattices and their additivity properties.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Verdict};

#[derive(Clone, PartialEq, Eq)]
pub struct LatticeMap {
    source: Arc<FiniteLattice>,
    target: Arc<FiniteLattice>,
    table: Vec<usize>,
}

/// Where a preservation property breaks: at the empty bound or at a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreservationWitness {
    Bound,
    Pair(usize, usize),
}

impl LatticeMap {
    pub fn new(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() || table.iter().any(|&y| y >= target.len()) {
            return Err(Error::MalformedMap);
        }
        Ok(LatticeMap { source, target, table })
    }

    pub fn from_fn(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let table = source.elements().map(f).collect();
        Self::new(source, target, table)
    }

    /// Builds a map from `(source label, target label)` pairs covering every source element.
    pub fn from_labels<S: AsRef<str>>(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut table = vec![None; source.len()];
        for (a, b) in pairs {
            let a = source.index_of_checked(a.as_ref())?;
            let b = target.index_of_checked(b.as_ref())?;
            if table[a].replace(b).is_some_and(|old| old != b) {
                return Err(Error::MalformedMap);
            }
        }
        let table = table.into_iter().collect::<Option<Vec<_>>>().ok_or(Error::MalformedMap)?;
        Self::new(source, target, table)
    }

    pub fn identity(l: Arc<FiniteLattice>) -> Self {
        let table = l.elements().collect();
        LatticeMap {
            source: l.clone(),
            target: l,
            table,
        }
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LatticeMap) -> Result<LatticeMap> {
        if *self.target != *next.source {
            return Err(Error::MalformedMap);
        }
        let table = self.table.iter().map(|&y| next.apply(y)).collect();
        Ok(LatticeMap {
            source: self.source.clone(),
            target: next.target.clone(),
            table,
        })
    }

    pub fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        let s = &self.source;
        for x in s.elements() {
            for y in s.elements() {
                if s.leq(x, y) && !self.target.leq(self.apply(x), self.apply(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violation().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.table.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    /// Source elements mapped to `y`.
    pub fn fiber(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.source.elements().filter(move |&x| self.apply(x) == y)
    }

    fn require_monotone(&self) -> Result<()> {
        match self.monotonicity_violation() {
            None => Ok(()),
            Some((x, y)) => Err(Error::NotMonotone(
                self.source.label(x).to_string(),
                self.source.label(y).to_string(),
            )),
        }
    }

    /// Every fiber contains its own join. A set `Y` with `h(Y) = {x}` lies in
    /// the fiber of `x`, so `⋁Y` sits between a member of the fiber and the
    /// fiber's join and is therefore mapped to `x` by monotonicity.
    /// The witness is the first image point whose fiber join escapes.
    pub fn is_locally_completely_additive(&self) -> Result<Verdict<usize>> {
        self.require_monotone()?;
        for y in self.target.elements() {
            if self.fiber(y).next().is_none() {
                continue;
            }
            let j = self.source.join_all(self.fiber(y));
            if self.apply(j) != y {
                return Ok(Verdict::Fails(y));
            }
        }
        Ok(Verdict::Holds)
    }

    /// `h(⊥) = ⊥` and binary joins are preserved. Every finite join is a
    /// fold of binary joins starting at `⊥`, so this covers all suprema.
    pub fn is_completely_additive(&self) -> Result<Verdict<PreservationWitness>> {
        self.require_monotone()?;
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.bottom()) != t.bottom() {
            return Ok(Verdict::Fails(PreservationWitness::Bound));
        }
        for x in s.elements() {
            for y in x + 1..s.len() {
                if self.apply(s.join(x, y)) != t.join(self.apply(x), self.apply(y)) {
                    return Ok(Verdict::Fails(PreservationWitness::Pair(x, y)));
                }
            }
        }
        Ok(Verdict::Holds)
    }

    /// `h(⊤) = ⊤` and binary meets are preserved.
    pub fn preserves_all_infima(&self) -> Result<Verdict<PreservationWitness>> {
        self.require_monotone()?;
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.top()) != t.top() {
            return Ok(Verdict::Fails(PreservationWitness::Bound));
        }
        for x in s.elements() {
            for y in x + 1..s.len() {
                if self.apply(s.meet(x, y)) != t.meet(self.apply(x), self.apply(y)) {
                    return Ok(Verdict::Fails(PreservationWitness::Pair(x, y)));
                }
            }
        }
        Ok(Verdict::Holds)
    }

    /// The same table between the dual lattices.
    pub fn dual(&self) -> LatticeMap {
        LatticeMap {
            source: Arc::new(self.source.dual()),
            target: Arc::new(self.target.dual()),
            table: self.table.clone(),
        }
    }

    /// Candidate lower adjoint `k(x) = ⋀{y : x ≤ h(y)}`.
    pub fn lower_adjoint_candidate(&self) -> LatticeMap {
        let table = self
            .target
            .elements()
            .map(|x| {
                self.source
                    .meet_all(self.source.elements().filter(|&y| self.target.leq(x, self.apply(y))))
            })
            .collect();
        LatticeMap {
            source: self.target.clone(),
            target: self.source.clone(),
            table,
        }
    }

    /// Label table, for messages and serialization.
    pub fn describe(&self) -> Vec<(String, String)> {
        self.source
            .elements()
            .map(|x| (self.source.label(x).to_string(), self.target.label(self.apply(x)).to_string()))
            .collect()
    }
}

impl fmt::Debug for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.describe()).finish()
    }
}

/// A Galois connection between `upper: L' -> L` and `lower: L -> L'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisPair {
    upper: LatticeMap,
    lower: LatticeMap,
    projection: bool,
}

impl GaloisPair {
    /// Validates `id ≤ h∘k` and `k∘h ≤ id` with both maps monotone.
    pub fn new(upper: LatticeMap, lower: LatticeMap) -> Result<Self> {
        if *upper.source != *lower.target || *upper.target != *lower.source {
            return Err(Error::MalformedMap);
        }
        upper.require_monotone()?;
        lower.require_monotone()?;
        let (l_prime, l) = (&upper.source, &upper.target);
        if let Some(x) = l.elements().find(|&x| !l.leq(x, upper.apply(lower.apply(x)))) {
            return Err(Error::NotProjection {
                law: "id ≤ h∘k",
                witness: l.label(x).to_string(),
            });
        }
        if let Some(y) = l_prime.elements().find(|&y| !l_prime.leq(lower.apply(upper.apply(y)), y)) {
            return Err(Error::NotProjection {
                law: "k∘h ≤ id",
                witness: l_prime.label(y).to_string(),
            });
        }
        let projection = l.elements().all(|x| upper.apply(lower.apply(x)) == x);
        Ok(GaloisPair {
            upper,
            lower,
            projection,
        })
    }

    pub fn upper(&self) -> &LatticeMap {
        &self.upper
    }

    pub fn lower(&self) -> &LatticeMap {
        &self.lower
    }

    pub fn is_projection_embedding(&self) -> bool {
        self.projection
    }
}

/// Computes the lower adjoint of `h` and checks that `(h, k)` is a
/// projection-embedding pair.
pub fn projection_adjoint(h: &LatticeMap) -> Result<GaloisPair> {
    h.require_monotone()?;
    let k = h.lower_adjoint_candidate();
    let (l_prime, l) = (&h.source, &h.target);
    if let Some(x) = l.elements().find(|&x| h.apply(k.apply(x)) != x) {
        return Err(Error::NotProjection {
            law: "h∘k = id",
            witness: l.label(x).to_string(),
        });
    }
    if let Some(y) = l_prime.elements().find(|&y| !l_prime.leq(k.apply(h.apply(y)), y)) {
        return Err(Error::NotProjection {
            law: "k∘h ≤ id",
            witness: l_prime.label(y).to_string(),
        });
    }
    GaloisPair::new(h.clone(), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Arc<FiniteLattice> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Arc::new(FiniteLattice::chain(&labels))
    }

    #[test]
    fn identity_is_its_own_adjoint() {
        let l = chain(3);
        let id = LatticeMap::identity(l);
        let g = projection_adjoint(&id).unwrap();
        assert_eq!(g.lower(), &id);
        assert!(g.is_projection_embedding());
        assert!(id.is_completely_additive().unwrap().holds());
        assert!(id.preserves_all_infima().unwrap().holds());
    }

    #[test]
    fn chain_collapse_is_a_projection() {
        let h = LatticeMap::new(chain(3), chain(2), vec![0, 0, 1]).unwrap();
        let g = projection_adjoint(&h).unwrap();
        assert_eq!(g.lower().table(), &[0, 2]);
        assert!(h.is_locally_completely_additive().unwrap().holds());
    }

    #[test]
    fn non_surjective_map_is_not_a_projection() {
        let h = LatticeMap::new(chain(2), chain(3), vec![0, 2]).unwrap();
        assert!(matches!(projection_adjoint(&h), Err(Error::NotProjection { .. })));
    }

    #[test]
    fn non_monotone_map_is_rejected() {
        let h = LatticeMap::new(chain(2), chain(2), vec![1, 0]).unwrap();
        assert!(matches!(projection_adjoint(&h), Err(Error::NotMonotone(_, _))));
        assert!(h.is_completely_additive().is_err());
    }

    #[test]
    fn malformed_tables() {
        assert_eq!(LatticeMap::new(chain(2), chain(2), vec![0]), Err(Error::MalformedMap));
        assert_eq!(LatticeMap::new(chain(2), chain(2), vec![0, 5]), Err(Error::MalformedMap));
    }

    #[test]
    fn composition() {
        let h1 = LatticeMap::new(chain(4), chain(3), vec![0, 1, 1, 2]).unwrap();
        let h2 = LatticeMap::new(chain(3), chain(2), vec![0, 0, 1]).unwrap();
        assert_eq!(h1.then(&h2).unwrap().table(), &[0, 0, 0, 1]);
    }
}

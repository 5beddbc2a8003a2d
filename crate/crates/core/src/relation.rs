//! Dense binary relations over element indices `0..n`.

use std::fmt;

/// A binary relation on `0..n`, stored row-major as a boolean matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| {
            (0..self.n)
                .filter(move |&b| self.contains(a, b))
                .map(move |b| (a, b))
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |a, b| self.contains(b, a))
    }

    pub fn union(&self, other: &Relation) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |a, b| self.contains(a, b) || other.contains(a, b))
    }

    pub fn intersection(&self, other: &Relation) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |a, b| self.contains(a, b) && other.contains(a, b))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs().all(|(a, b)| other.contains(a, b))
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn reflexive_transitive_closure(&self) -> Self {
        let mut r = self.clone();
        let n = self.n;
        for i in 0..n {
            r.insert(i, i);
        }
        for k in 0..n {
            for i in 0..n {
                if !r.contains(i, k) {
                    continue;
                }
                for j in 0..n {
                    if r.contains(k, j) {
                        r.insert(i, j);
                    }
                }
            }
        }
        r
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.contains(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for k in 0..n {
                if !self.contains(i, k) {
                    continue;
                }
                for j in 0..n {
                    if self.contains(k, j) && !self.contains(i, j) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// First pair `(a, b)` with `a != b` related both ways.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.contains(a, b) && self.contains(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The equivalence kernel `{(a, b) : a R b and b R a}`.
    pub fn kernel(&self) -> Self {
        Self::from_fn(self.n, |a, b| self.contains(a, b) && self.contains(b, a))
    }

    /// Relabels along `perm`: the result relates `perm[a]` and `perm[b]` when `self` relates `a` and `b`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut r = Self::empty(self.n);
        for (a, b) in self.pairs() {
            r.insert(perm[a], perm[b]);
        }
        r
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

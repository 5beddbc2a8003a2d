//! Finite complete lattices.
//!
//! A finite poset with all binary meets and joins plus a bottom and a top is
//! a complete lattice, so everything here is stored as dense tables over
//! element indices. Labels only matter for input and output.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::Relation;

/// Outcome of an exhaustive check that can fail at a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Relation,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Closes `leq_pairs` reflexively and transitively, checks antisymmetry and
    /// fills the meet and join tables.
    pub fn new<S: AsRef<str>>(elements: &[S], leq_pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()))
        };
        let mut pairs = Vec::with_capacity(leq_pairs.len());
        for (a, b) in leq_pairs {
            pairs.push((lookup(a)?, lookup(b)?));
        }
        let leq = Relation::from_pairs(labels.len(), pairs);
        Self::from_relation(labels, &leq)
    }

    /// Builds a lattice from labels and a generating relation over their indices.
    pub fn from_relation(labels: Vec<String>, generators: &Relation) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NoBound("the empty poset has no bottom"));
        }
        let leq = generators.reflexive_transitive_closure();
        if let Some((a, b)) = leq.antisymmetry_violation() {
            return Err(Error::Cycle(labels[a].clone(), labels[b].clone()));
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = greatest(&leq, (0..n).filter(|&z| leq.contains(z, a) && leq.contains(z, b)))
                    .ok_or_else(|| Error::NotALattice(labels[a].clone(), labels[b].clone(), "meet"))?;
                let j = least(&leq, (0..n).filter(|&z| leq.contains(a, z) && leq.contains(b, z)))
                    .ok_or_else(|| Error::NotALattice(labels[a].clone(), labels[b].clone(), "join"))?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| leq.contains(b, x)))
            .ok_or(Error::NoBound("no least element"))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq.contains(x, t)))
            .ok_or(Error::NoBound("no greatest element"))?;
        Ok(FiniteLattice {
            labels,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The chain `labels[0] < labels[1] < ...`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Self {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let n = labels.len();
        let rel = Relation::from_fn(n, |a, b| a <= b);
        Self::from_relation(labels, &rel).expect("a nonempty chain is a lattice")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn index_of_checked(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn order(&self) -> &Relation {
        &self.leq
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.contains(a, b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Least upper bound; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, subset: I) -> usize {
        subset.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Greatest lower bound; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, subset: I) -> usize {
        subset.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// The order-dual lattice on the same labels.
    pub fn dual(&self) -> Self {
        let n = self.len();
        let leq = self.leq.transpose();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = self.join(a, b);
                join[a * n + b] = self.meet(a, b);
            }
        }
        FiniteLattice {
            labels: self.labels.clone(),
            leq,
            meet,
            join,
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// The sublattice-as-poset induced on `members` (in the given order),
    /// with its own meets and joins. Fails when the induced poset is not a lattice.
    pub fn induced(&self, members: &[usize]) -> Result<Self> {
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        let rel = Relation::from_fn(members.len(), |a, b| self.leq(members[a], members[b]));
        Self::from_relation(labels, &rel)
    }

    /// Renames every element.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self> {
        assert_eq!(labels.len(), self.len());
        Self::from_relation(labels, &self.leq)
    }

    /// Covering pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Element indices sorted by label.
    pub fn sorted_by_label(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = self.elements().collect();
        idx.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        idx
    }

    /// Every order isomorphism onto `other`, as tables `self -> other`.
    pub fn isomorphisms(&self, other: &FiniteLattice) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.len() == other.len() {
            let mut perm = Vec::with_capacity(self.len());
            let mut used = vec![false; other.len()];
            self.extend_isomorphism(other, &mut perm, &mut used, &mut out);
        }
        out
    }

    fn extend_isomorphism(
        &self,
        other: &FiniteLattice,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let x = perm.len();
        if x == self.len() {
            out.push(perm.clone());
            return;
        }
        for y in other.elements() {
            if used[y] {
                continue;
            }
            let fits = (0..x).all(|a| {
                self.leq(a, x) == other.leq(perm[a], y) && self.leq(x, a) == other.leq(y, perm[a])
            });
            if fits {
                used[y] = true;
                perm.push(y);
                self.extend_isomorphism(other, perm, used, out);
                perm.pop();
                used[y] = false;
            }
        }
    }

    /// Whether `perm` (old index -> new index) is an order isomorphism onto `other`.
    pub fn is_isomorphism_onto(&self, other: &FiniteLattice, perm: &[usize]) -> bool {
        self.len() == other.len()
            && perm.len() == self.len()
            && self
                .elements()
                .all(|a| self.elements().all(|b| self.leq(a, b) == other.leq(perm[a], perm[b])))
    }
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "FiniteLattice[{}]", covers.join(", "))
    }
}

fn greatest(leq: &Relation, candidates: impl Iterator<Item = usize> + Clone) -> Option<usize> {
    candidates
        .clone()
        .find(|&m| candidates.clone().all(|z| leq.contains(z, m)))
}

fn least(leq: &Relation, candidates: impl Iterator<Item = usize> + Clone) -> Option<usize> {
    candidates
        .clone()
        .find(|&m| candidates.clone().all(|z| leq.contains(m, z)))
}

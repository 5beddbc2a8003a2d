//! Stratified complete lattices: a finite lattice with preorders
//! `⊑_0 .. ⊑_{D-1}`. Every level at or beyond `D` is the identity relation,
//! so quantification over levels stops at `D`.

mod alternative;
mod axioms;
mod consequences;
mod lex;

use std::fmt;
use std::sync::Arc;

pub use alternative::b_axiomatization_round_trip;
pub use axioms::{check_axioms, classify, is_model, replay, Axiom, AxiomReport, Classification, Suite, Witness};
pub use consequences::{check_consequences, replay_consequence, Consequence, ConsequenceReport};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::relation::Relation;

#[derive(Clone)]
pub struct StratifiedLattice {
    lattice: Arc<FiniteLattice>,
    /// `D + 1` relations; the last is the identity.
    preorders: Vec<Relation>,
    levels: Vec<LevelCache>,
}

#[derive(Clone)]
struct LevelCache {
    class_meet: Vec<usize>,
    least: Vec<Option<usize>>,
    corestriction: Vec<Option<usize>>,
}

/// A generating set for one preorder.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreorderSpec {
    pub pairs: Vec<(usize, usize)>,
    pub include_leq: bool,
}

impl StratifiedLattice {
    /// Takes `⊑_0 .. ⊑_{D-1}` as given; each must already be a preorder.
    pub fn new(lattice: Arc<FiniteLattice>, preorders: Vec<Relation>) -> Result<Self> {
        let n = lattice.len();
        for (alpha, p) in preorders.iter().enumerate() {
            if p.size() != n || !p.is_preorder() {
                return Err(Error::NotAPreorder(alpha));
            }
        }
        let mut preorders = preorders;
        preorders.push(Relation::identity(n));
        let levels = preorders.iter().map(|p| LevelCache::build(&lattice, p)).collect();
        Ok(StratifiedLattice {
            lattice,
            preorders,
            levels,
        })
    }

    /// Closes each generating set reflexively and transitively, optionally
    /// together with the lattice order.
    pub fn from_generators(lattice: Arc<FiniteLattice>, specs: &[PreorderSpec]) -> Result<Self> {
        let n = lattice.len();
        let mut preorders = Vec::with_capacity(specs.len());
        for spec in specs {
            if spec.pairs.iter().any(|&(a, b)| a >= n || b >= n) {
                return Err(Error::Input("preorder pair refers to an unknown element".into()));
            }
            let mut r = Relation::from_pairs(n, spec.pairs.iter().copied());
            if spec.include_leq {
                r = r.union(lattice.order());
            }
            preorders.push(r.reflexive_transitive_closure());
        }
        Self::new(lattice, preorders)
    }

    /// Depth 1 with `⊑_0 = ≤`, so every `=_α` is the identity.
    pub fn discrete(lattice: Arc<FiniteLattice>) -> Self {
        let leq = lattice.order().clone();
        Self::new(lattice, vec![leq]).expect("the lattice order is a preorder")
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.lattice.elements()
    }

    /// Number of explicit preorders.
    pub fn depth(&self) -> usize {
        self.preorders.len() - 1
    }

    /// Levels `0..=D`.
    pub fn levels(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.depth()
    }

    /// `⊑_α`, the identity for `α ≥ D`.
    pub fn preorder(&self, alpha: usize) -> &Relation {
        &self.preorders[alpha.min(self.depth())]
    }

    /// The explicit preorders `⊑_0 .. ⊑_{D-1}`.
    pub fn explicit_preorders(&self) -> &[Relation] {
        &self.preorders[..self.depth()]
    }

    /// `x ⊑_α y`.
    #[inline]
    pub fn sq(&self, alpha: usize, x: usize, y: usize) -> bool {
        self.preorder(alpha).contains(x, y)
    }

    /// `x =_α y`.
    #[inline]
    pub fn eq_at(&self, alpha: usize, x: usize, y: usize) -> bool {
        self.sq(alpha, x, y) && self.sq(alpha, y, x)
    }

    /// `x =_β y` for every `β < α`.
    pub fn prefix_eq(&self, alpha: usize, x: usize, y: usize) -> bool {
        (0..alpha.min(self.depth() + 1)).all(|b| self.eq_at(b, x, y))
    }

    #[inline]
    fn cache(&self, alpha: usize) -> &LevelCache {
        &self.levels[alpha.min(self.depth())]
    }

    /// `⋀[x]_α`, whether or not it belongs to the class.
    #[inline]
    pub fn class_meet(&self, x: usize, alpha: usize) -> usize {
        self.cache(alpha).class_meet[x]
    }

    /// The least element of `[x]_α`, if the class has one.
    #[inline]
    pub fn class_least(&self, x: usize, alpha: usize) -> Option<usize> {
        self.cache(alpha).least[x]
    }

    /// `x|_α = ⋀[x]_α`.
    pub fn restrict(&self, x: usize, alpha: usize) -> Result<usize> {
        if alpha >= self.depth() {
            return Ok(x);
        }
        self.class_least(x, alpha).ok_or_else(|| Error::NotAModel {
            axiom: "A3",
            witness: format!("α={alpha}, x={}", self.lattice.label(x)),
        })
    }

    /// `x|_α` for callers that already know the structure is a model.
    #[inline]
    pub fn res(&self, x: usize, alpha: usize) -> usize {
        self.class_meet(x, alpha)
    }

    /// `x|^α = ⋁{z : z ⊑_α x}`, provided it is `=_α`-equivalent to `x`.
    pub fn corestrict(&self, x: usize, alpha: usize) -> Result<usize> {
        if alpha >= self.depth() {
            return Ok(x);
        }
        self.cache(alpha).corestriction[x].ok_or_else(|| Error::A3dFails {
            level: alpha,
            element: self.lattice.label(x).to_string(),
        })
    }

    pub(crate) fn corestriction(&self, x: usize, alpha: usize) -> Option<usize> {
        self.cache(alpha).corestriction[x]
    }

    /// The `=_α`-classes, each sorted, ordered by least index.
    pub fn classes(&self, alpha: usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in self.elements() {
            if seen[x] {
                continue;
            }
            let class: Vec<usize> = self.elements().filter(|&y| self.eq_at(alpha, x, y)).collect();
            for &y in &class {
                seen[y] = true;
            }
            out.push(class);
        }
        out
    }

    /// `L|_α = {x : x|_α = x}`, assuming a model.
    pub fn level_set(&self, alpha: usize) -> Vec<usize> {
        self.elements().filter(|&x| self.res(x, alpha) == x).collect()
    }

    /// Classes, restrictions, level sets and corestrictions at every level `0..=D`.
    pub fn class_structure(&self) -> Result<ClassStructure> {
        let mut levels = Vec::new();
        for alpha in self.levels() {
            let restriction = self
                .elements()
                .map(|x| self.restrict(x, alpha))
                .collect::<Result<Vec<_>>>()?;
            let level_set = self.elements().filter(|&x| restriction[x] == x).collect();
            levels.push(LevelClasses {
                classes: self.classes(alpha),
                restriction,
                level_set,
                corestriction: self.elements().map(|x| self.corestrict(x, alpha).ok()).collect(),
            });
        }
        Ok(ClassStructure { levels })
    }

    /// Reverses `≤` and every `⊑_α`.
    pub fn dualize(&self) -> StratifiedLattice {
        let lattice = Arc::new(self.lattice.dual());
        let preorders = self.explicit_preorders().iter().map(Relation::transpose).collect();
        StratifiedLattice::new(lattice, preorders).expect("transposed preorders are preorders")
    }

    /// Drops trailing explicit levels that already coincide with the identity.
    pub fn trimmed(&self) -> StratifiedLattice {
        let id = Relation::identity(self.len());
        let mut pre = self.explicit_preorders().to_vec();
        while pre.last().is_some_and(|p| *p == id) {
            pre.pop();
        }
        StratifiedLattice::new(self.lattice.clone(), pre).expect("preorders unchanged")
    }

    /// Same structure with `perm[x]` as the new index of `x`.
    pub fn permuted(&self, perm: &[usize]) -> Result<StratifiedLattice> {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        for x in self.elements() {
            labels[perm[x]] = self.lattice.label(x).to_string();
        }
        let lattice = Arc::new(FiniteLattice::from_relation(labels, &self.lattice.order().permuted(perm))?);
        let preorders = self.explicit_preorders().iter().map(|p| p.permuted(perm)).collect();
        StratifiedLattice::new(lattice, preorders)
    }

    /// Label-free structural equality with `other` under `perm`, including every `⊑_α`.
    pub fn is_isomorphism_onto(&self, other: &StratifiedLattice, perm: &[usize]) -> bool {
        let d = self.depth().max(other.depth());
        self.lattice.is_isomorphism_onto(&other.lattice, perm)
            && (0..=d).all(|alpha| {
                self.elements().all(|x| {
                    self.elements()
                        .all(|y| self.sq(alpha, x, y) == other.sq(alpha, perm[x], perm[y]))
                })
            })
    }
}

impl PartialEq for StratifiedLattice {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.preorders == other.preorders
    }
}

impl Eq for StratifiedLattice {}

impl fmt::Debug for StratifiedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &self.lattice;
        let mut d = f.debug_struct("StratifiedLattice");
        d.field("lattice", l);
        for (alpha, p) in self.explicit_preorders().iter().enumerate() {
            let strict: Vec<String> = p
                .pairs()
                .filter(|&(a, b)| a != b && !l.leq(a, b))
                .map(|(a, b)| format!("{}⊑{}", l.label(a), l.label(b)))
                .collect();
            let missing: Vec<String> = l
                .order()
                .pairs()
                .filter(|&(a, b)| !p.contains(a, b))
                .map(|(a, b)| format!("{}≤{}", l.label(a), l.label(b)))
                .collect();
            d.field(&format!("⊑_{alpha} beyond ≤"), &strict);
            d.field(&format!("⊑_{alpha} missing ≤"), &missing);
        }
        d.finish()
    }
}

impl LevelCache {
    fn build(l: &FiniteLattice, p: &Relation) -> Self {
        let n = l.len();
        let eq = |x: usize, y: usize| p.contains(x, y) && p.contains(y, x);
        let mut class_meet = vec![0; n];
        let mut least = vec![None; n];
        let mut corestriction = vec![None; n];
        for x in 0..n {
            let m = l.meet_all((0..n).filter(|&y| eq(x, y)));
            class_meet[x] = m;
            if eq(x, m) {
                least[x] = Some(m);
            }
            let j = l.join_all((0..n).filter(|&z| p.contains(z, x)));
            if eq(x, j) {
                corestriction[x] = Some(j);
            }
        }
        LevelCache {
            class_meet,
            least,
            corestriction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelClasses {
    pub classes: Vec<Vec<usize>>,
    pub restriction: Vec<usize>,
    pub level_set: Vec<usize>,
    pub corestriction: Vec<Option<usize>>,
}

/// Per-level view of a model, indexed by `α ∈ 0..=D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStructure {
    pub levels: Vec<LevelClasses>,
}

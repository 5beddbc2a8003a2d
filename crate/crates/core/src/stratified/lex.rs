//! The lexicographic order `⊑` and the level-wise bounds `⊔_α`.

use super::axioms::{check_axioms, Suite};
use super::StratifiedLattice;
use crate::error::{Error, Result};

impl StratifiedLattice {
    /// `x ⊑ y`: equal, or strictly `⊑_α`-below at some level.
    pub fn lex_leq(&self, x: usize, y: usize) -> bool {
        x == y || self.levels().any(|a| self.sq(a, x, y) && !self.sq(a, y, x))
    }

    pub fn lex_lt(&self, x: usize, y: usize) -> bool {
        x != y && self.lex_leq(x, y)
    }

    pub(crate) fn require_restrictions(&self) -> Result<()> {
        for a in 0..self.depth() {
            if let Some(x) = self.elements().find(|&x| self.class_least(x, a).is_none()) {
                return Err(Error::NotAModel {
                    axiom: "A3",
                    witness: format!("α={a}, x={}", self.lattice().label(x)),
                });
            }
        }
        Ok(())
    }

    /// `Z_α`: elements of `L|_α` whose restrictions below `α` are `prefix`.
    pub fn level_slice(&self, alpha: usize, prefix: &[usize]) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.res(z, alpha) == z && self.has_prefix(z, prefix))
            .collect()
    }

    #[inline]
    pub(crate) fn has_prefix(&self, x: usize, prefix: &[usize]) -> bool {
        prefix.iter().enumerate().all(|(b, &p)| self.res(x, b) == p)
    }

    /// The `⊑`-least upper bound of `xs`.
    pub fn lex_sup(&self, xs: &[usize]) -> Result<usize> {
        self.require_restrictions()?;
        let l = self.lattice();
        let mut prefix: Vec<usize> = Vec::with_capacity(self.depth() + 1);
        let mut floor = l.bottom();
        for alpha in self.levels() {
            let ys = xs
                .iter()
                .filter(|&&x| self.has_prefix(x, &prefix))
                .map(|&x| self.res(x, alpha));
            let y = self.res(l.join(l.join_all(ys), floor), alpha);
            if !self.has_prefix(y, &prefix) {
                return Err(Error::NotAModel {
                    axiom: "⊑-sup",
                    witness: format!("level {alpha} component {} leaves its slice", l.label(y)),
                });
            }
            prefix.push(y);
            floor = y;
        }
        Ok(floor)
    }

    /// The `⊑`-greatest lower bound of `xs`.
    pub fn lex_inf(&self, xs: &[usize]) -> Result<usize> {
        self.require_restrictions()?;
        let l = self.lattice();
        let mut prefix: Vec<usize> = Vec::with_capacity(self.depth() + 1);
        for alpha in self.levels() {
            let slice = self.level_slice(alpha, &prefix);
            let ys: Vec<usize> = xs
                .iter()
                .filter(|&&x| self.has_prefix(x, &prefix))
                .map(|&x| self.res(x, alpha))
                .collect();
            let below: Vec<usize> = slice
                .iter()
                .copied()
                .filter(|&z| ys.iter().all(|&y| l.leq(z, y)))
                .collect();
            let y = below
                .iter()
                .copied()
                .find(|&m| below.iter().all(|&z| l.leq(z, m)))
                .ok_or_else(|| Error::NotAModel {
                    axiom: "⊑-inf",
                    witness: format!("level {alpha} slice has no greatest lower bound"),
                })?;
            prefix.push(y);
        }
        Ok(*prefix.last().expect("at least one level"))
    }

    /// `(x]_α = {z : z =_β x for all β < α}`.
    pub fn prefix_class(&self, alpha: usize, x: usize) -> Vec<usize> {
        self.elements().filter(|&z| self.prefix_eq(alpha, z, x)).collect()
    }

    /// `⊔_α X = ⋁(X|_α ∪ {x̄})` where `x̄` is the least element of `(r]_α`.
    /// The result is checked to be the least `⊑_α`-upper bound of `X` in `(r]_α`.
    pub fn sqcup_alpha(&self, xs: &[usize], alpha: usize, reference: usize) -> Result<usize> {
        self.require_restrictions()?;
        let l = self.lattice();
        if let Some(&x) = xs.iter().find(|&&x| !self.prefix_eq(alpha, x, reference)) {
            return Err(Error::PreconditionViolated(format!(
                "{} is not in the level-{alpha} prefix class of {}",
                l.label(x),
                l.label(reference)
            )));
        }
        let class = self.prefix_class(alpha, reference);
        let floor = class
            .iter()
            .copied()
            .find(|&m| class.iter().all(|&z| l.leq(m, z)))
            .ok_or_else(|| Error::NotAModel {
                axiom: "⊔_α",
                witness: format!("prefix class of {} at level {alpha} has no least element", l.label(reference)),
            })?;
        let y = l.join(l.join_all(xs.iter().map(|&x| self.res(x, alpha))), floor);
        let fail = |what: &str, z: usize| Error::NotAModel {
            axiom: "⊔_α",
            witness: format!("{what} at {} (result {}, level {alpha})", l.label(z), l.label(y)),
        };
        if !self.prefix_eq(alpha, y, reference) {
            return Err(fail("result leaves the prefix class", y));
        }
        if let Some(&x) = xs.iter().find(|&&x| !self.sq(alpha, x, y)) {
            return Err(fail("not an upper bound", x));
        }
        for &z in &class {
            if xs.iter().all(|&x| self.sq(alpha, x, z)) && !(l.leq(y, z) && self.sq(alpha, y, z)) {
                return Err(fail("not least", z));
            }
        }
        Ok(y)
    }

    /// For `⊑_α`-increasing chains `x_{i,0}, x_{i,1}, …` in a strong model,
    /// `⋁_i ⊔_α{x_{i,n}} =_α ⊔_α{⋁_i x_{i,n}}`. Shorter chains are padded with
    /// their last element.
    pub fn check_prop_p3(&self, chains: &[Vec<usize>], alpha: usize) -> Result<bool> {
        let l = self.lattice();
        if chains.is_empty() || chains.iter().any(Vec::is_empty) {
            return Err(Error::PreconditionViolated("chains must be nonempty".into()));
        }
        if let Some(rep) = check_axioms(self, Suite::Strong.axioms()).into_iter().find(|r| !r.holds) {
            return Err(Error::PreconditionViolated(format!("not a strong model: {} fails", rep.axiom)));
        }
        for chain in chains {
            if let Some(w) = chain.windows(2).find(|w| !self.sq(alpha, w[0], w[1])) {
                return Err(Error::PreconditionViolated(format!(
                    "chain not ⊑_{alpha}-increasing at {} → {}",
                    l.label(w[0]),
                    l.label(w[1])
                )));
            }
        }
        let len = chains.iter().map(Vec::len).max().unwrap_or(0);
        let at = |c: &Vec<usize>, n: usize| c[n.min(c.len() - 1)];

        let mut lhs = l.bottom();
        for chain in chains {
            lhs = l.join(lhs, self.sqcup_alpha(chain, alpha, chain[0])?);
        }
        let column_joins: Vec<usize> = (0..len).map(|n| l.join_all(chains.iter().map(|c| at(c, n)))).collect();
        let rhs = self.sqcup_alpha(&column_joins, alpha, column_joins[0])?;
        Ok(self.eq_at(alpha, lhs, rhs))
    }
}

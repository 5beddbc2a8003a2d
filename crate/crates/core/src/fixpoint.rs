//! Fixed points of weakly monotone self-maps of a model, built level by level.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::Verdict;
use crate::stratified::StratifiedLattice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoFunction {
    model: Arc<StratifiedLattice>,
    table: Vec<usize>,
}

/// One level of a stratified fixed-point computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStep {
    pub level: usize,
    /// Where the iteration started inside `Z_α`.
    pub start: usize,
    /// Iterates after `start`, ending at the level value.
    pub iterates: Vec<usize>,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointTrace {
    pub steps: Vec<LevelStep>,
    pub result: usize,
}

/// `f_α` on `L|_α`, stored as a table over model indices of the members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelComponent {
    pub level: usize,
    pub members: Vec<usize>,
    /// `table[i]` is `f_α(members[i])`.
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelFamily {
    pub components: Vec<LevelComponent>,
}

impl LevelFamily {
    pub fn apply(&self, alpha: usize, u: usize) -> Option<usize> {
        let c = &self.components[alpha];
        c.members.iter().position(|&m| m == u).map(|i| c.table[i])
    }
}

/// The fixed points of `f` with the outcome of the subset-by-subset check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointLattice {
    pub points: Vec<usize>,
    /// Whether every subset was checked or only a sample.
    pub exhaustive: bool,
    pub subsets_checked: usize,
    /// A subset of `points` without a `⊑`-sup or `⊑`-inf among the fixed
    /// points, or whose bounds disagree with the level-wise construction.
    pub verdict: Verdict<Vec<usize>>,
}

const EXHAUSTIVE_LIMIT: usize = 12;
const SAMPLED_SUBSETS: usize = 4096;

impl EndoFunction {
    pub fn new(model: Arc<StratifiedLattice>, table: Vec<usize>) -> Result<Self> {
        if table.len() != model.len() || table.iter().any(|&y| y >= model.len()) {
            return Err(Error::MalformedMap);
        }
        Ok(EndoFunction { model, table })
    }

    pub fn from_fn(model: Arc<StratifiedLattice>, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = model.elements().map(f).collect();
        Self::new(model, table)
    }

    pub fn identity(model: Arc<StratifiedLattice>) -> Self {
        let table = model.elements().collect();
        EndoFunction { model, table }
    }

    pub fn constant(model: Arc<StratifiedLattice>, c: usize) -> Self {
        let table = vec![c; model.len()];
        EndoFunction { model, table }
    }

    pub fn model(&self) -> &Arc<StratifiedLattice> {
        &self.model
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// First pair with `x ⊑_α y` but not `f(x) ⊑_α f(y)`.
    pub fn is_alpha_monotone(&self, alpha: usize) -> Verdict<(usize, usize)> {
        let s = &self.model;
        for x in s.elements() {
            for y in s.elements() {
                if s.sq(alpha, x, y) && !s.sq(alpha, self.apply(x), self.apply(y)) {
                    return Verdict::Fails((x, y));
                }
            }
        }
        Verdict::Holds
    }

    /// `α`-monotone at every level `0..=D`.
    pub fn is_weakly_monotone(&self) -> bool {
        self.weak_monotonicity_violation().is_none()
    }

    pub fn weak_monotonicity_violation(&self) -> Option<(usize, usize, usize)> {
        self.model.levels().find_map(|a| match self.is_alpha_monotone(a) {
            Verdict::Holds => None,
            Verdict::Fails((x, y)) => Some((a, x, y)),
        })
    }

    fn require_weakly_monotone(&self) -> Result<()> {
        match self.weak_monotonicity_violation() {
            None => Ok(()),
            Some((level, x, y)) => {
                let l = self.model.lattice();
                Err(Error::NotWeaklyMonotone {
                    level,
                    x: l.label(x).to_string(),
                    y: l.label(y).to_string(),
                })
            }
        }
    }

    /// `f_α(u) = f(u)|_α`.
    #[inline]
    pub fn component(&self, alpha: usize, u: usize) -> usize {
        self.model.res(self.apply(u), alpha)
    }

    /// The components `f_α` on `L|_α`, checked to be conditionally monotone,
    /// compatible with the restriction maps, and to reassemble `f`.
    pub fn level_components(&self) -> Result<LevelFamily> {
        self.model.require_restrictions()?;
        self.require_weakly_monotone()?;
        let s = &self.model;
        let l = s.lattice();
        let broken = |what: &str, alpha: usize, x: usize| {
            Error::Internal(format!("level component {alpha}: {what} at {}", l.label(x)))
        };
        let mut components = Vec::new();
        for alpha in s.levels() {
            let members = s.level_set(alpha);
            let table: Vec<usize> = members.iter().map(|&u| self.component(alpha, u)).collect();
            for (i, &u) in members.iter().enumerate() {
                for (j, &v) in members.iter().enumerate() {
                    let same_prefix = (0..alpha).all(|b| s.res(u, b) == s.res(v, b));
                    if same_prefix && l.leq(u, v) && !l.leq(table[i], table[j]) {
                        return Err(broken("not conditionally monotone", alpha, u));
                    }
                }
                for b in 0..alpha {
                    if s.res(table[i], b) != self.component(b, s.res(u, b)) {
                        return Err(broken("not compatible", alpha, u));
                    }
                }
            }
            for x in s.elements() {
                if s.res(self.apply(x), alpha) != self.component(alpha, s.res(x, alpha)) {
                    return Err(broken("does not reassemble f", alpha, x));
                }
            }
            components.push(LevelComponent {
                level: alpha,
                members,
                table,
            });
        }
        Ok(LevelFamily { components })
    }

    /// The `⊑`-least pre-fixed point, which is a fixed point.
    pub fn stratified_lfp(&self) -> Result<usize> {
        self.lfp_above(&[])
    }

    pub fn stratified_lfp_traced(&self) -> Result<FixpointTrace> {
        self.lfp_above_traced(&[])
    }

    /// The `⊑`-least fixed point `y` with `X ⊑ y`, for `X` a set of
    /// `≤`-post-fixed points.
    pub fn lfp_above(&self, xs: &[usize]) -> Result<usize> {
        self.lfp_above_traced(xs).map(|t| t.result)
    }

    pub fn lfp_above_traced(&self, xs: &[usize]) -> Result<FixpointTrace> {
        self.model.require_restrictions()?;
        self.require_weakly_monotone()?;
        let s = &self.model;
        let l = s.lattice();
        if let Some(&x) = xs.iter().find(|&&x| !l.leq(x, self.apply(x))) {
            return Err(Error::PreconditionViolated(format!("{} is not post-fixed", l.label(x))));
        }
        let mut prefix: Vec<usize> = Vec::new();
        let mut steps = Vec::new();
        let mut floor = l.bottom();
        for alpha in s.levels() {
            let slice = s.level_slice(alpha, &prefix);
            let ys = xs
                .iter()
                .filter(|&&x| s.has_prefix(x, &prefix))
                .map(|&x| s.res(x, alpha));
            let start = s.res(l.join(l.join_all(ys), floor), alpha);
            let (value, iterates) = self.iterate(alpha, start, &slice, |u, fu| s.res(l.join(u, fu), alpha))?;
            steps.push(LevelStep {
                level: alpha,
                start,
                iterates,
                value,
            });
            prefix.push(value);
            floor = value;
        }
        self.finish(steps, floor)
    }

    /// The `⊑`-greatest fixed point `y` with `y ⊑ X`, for `X` a set of
    /// `≤`-pre-fixed points.
    pub fn gfp_below(&self, xs: &[usize]) -> Result<usize> {
        self.gfp_below_traced(xs).map(|t| t.result)
    }

    pub fn gfp_below_traced(&self, xs: &[usize]) -> Result<FixpointTrace> {
        self.model.require_restrictions()?;
        self.require_weakly_monotone()?;
        let s = &self.model;
        let l = s.lattice();
        if let Some(&x) = xs.iter().find(|&&x| !l.leq(self.apply(x), x)) {
            return Err(Error::PreconditionViolated(format!("{} is not pre-fixed", l.label(x))));
        }
        let mut prefix: Vec<usize> = Vec::new();
        let mut steps = Vec::new();
        for alpha in s.levels() {
            let slice = s.level_slice(alpha, &prefix);
            let ys: Vec<usize> = xs
                .iter()
                .filter(|&&x| s.has_prefix(x, &prefix))
                .map(|&x| s.res(x, alpha))
                .collect();
            let glb = |bounds: &[usize]| {
                let below: Vec<usize> = slice
                    .iter()
                    .copied()
                    .filter(|&z| bounds.iter().all(|&b| l.leq(z, b)))
                    .collect();
                below.iter().copied().find(|&m| below.iter().all(|&z| l.leq(z, m)))
            };
            let start = glb(&ys).ok_or_else(|| {
                Error::Internal(format!("level {alpha}: no greatest lower bound inside the slice"))
            })?;
            let (value, iterates) = self.iterate(alpha, start, &slice, |u, fu| glb(&[u, fu]).unwrap_or(usize::MAX))?;
            steps.push(LevelStep {
                level: alpha,
                start,
                iterates,
                value,
            });
            prefix.push(value);
        }
        let result = *prefix.last().expect("at least one level");
        self.finish(steps, result)
    }

    fn iterate(
        &self,
        alpha: usize,
        start: usize,
        slice: &[usize],
        step: impl Fn(usize, usize) -> usize,
    ) -> Result<(usize, Vec<usize>)> {
        let l = self.model.lattice();
        let escaped = |u: usize| {
            Error::Internal(format!(
                "level {alpha}: iteration left the slice at {}",
                l.labels().get(u).map_or("?", |s| s.as_str())
            ))
        };
        if !slice.contains(&start) {
            return Err(escaped(start));
        }
        let mut u = start;
        let mut iterates = Vec::new();
        for _ in 0..=slice.len() {
            let fu = self.component(alpha, u);
            if !slice.contains(&fu) {
                return Err(escaped(fu));
            }
            if fu == u {
                return Ok((u, iterates));
            }
            let next = step(u, fu);
            if !slice.contains(&next) {
                return Err(escaped(next));
            }
            u = next;
            iterates.push(u);
        }
        Err(Error::Internal(format!("level {alpha}: iteration did not converge")))
    }

    fn finish(&self, steps: Vec<LevelStep>, result: usize) -> Result<FixpointTrace> {
        if self.apply(result) != result {
            return Err(Error::Internal(format!(
                "assembled value {} is not a fixed point",
                self.model.lattice().label(result)
            )));
        }
        Ok(FixpointTrace { steps, result })
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.model.elements().filter(|&x| self.apply(x) == x).collect()
    }

    /// Checks that every subset of `Fix(f)` has a `⊑`-sup and a `⊑`-inf in
    /// `Fix(f)` and that they match the level-wise constructions. Exhaustive
    /// up to 12 fixed points; beyond that a seeded sample of subsets.
    pub fn fixed_point_lattice(&self) -> Result<FixedPointLattice> {
        self.require_weakly_monotone()?;
        let s = &self.model;
        let points = self.fixed_points();
        let k = points.len();
        let mut below = vec![0u64; k];
        let mut above = vec![0u64; k];
        for (i, &p) in points.iter().enumerate() {
            for (j, &q) in points.iter().enumerate() {
                if s.lex_leq(q, p) {
                    below[i] |= 1 << j;
                    above[j] |= 1 << i;
                }
            }
        }
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let exhaustive = k <= EXHAUSTIVE_LIMIT;
        let subsets: Vec<u64> = if exhaustive {
            (0..=all).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            (0..SAMPLED_SUBSETS).map(|_| rng.gen::<u64>() & all).collect()
        };
        let members = |mask: u64| -> Vec<usize> { (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| points[i]).collect() };
        for &mask in &subsets {
            let uppers: u64 = (0..k).filter(|&i| mask & !below[i] == 0).fold(0, |m, i| m | 1 << i);
            let lowers: u64 = (0..k).filter(|&i| mask & !above[i] == 0).fold(0, |m, i| m | 1 << i);
            let sup = (0..k).find(|&i| uppers >> i & 1 == 1 && uppers & !above[i] == 0);
            let inf = (0..k).find(|&i| lowers >> i & 1 == 1 && lowers & !below[i] == 0);
            let set = members(mask);
            let agrees = match (sup, inf) {
                (Some(sup), Some(inf)) => {
                    self.lfp_above(&set)? == points[sup] && self.gfp_below(&set)? == points[inf]
                }
                _ => false,
            };
            if !agrees {
                return Ok(FixedPointLattice {
                    points,
                    exhaustive,
                    subsets_checked: subsets.len(),
                    verdict: Verdict::Fails(set),
                });
            }
        }
        Ok(FixedPointLattice {
            points,
            exhaustive,
            subsets_checked: subsets.len(),
            verdict: Verdict::Holds,
        })
    }

    /// The `⊑`-sup of `≤`-post-fixed points is `≤`-post-fixed.
    pub fn check_supp_post_fixed(&self, xs: &[usize]) -> Result<bool> {
        self.require_weakly_monotone()?;
        let l = self.model.lattice();
        if let Some(&x) = xs.iter().find(|&&x| !l.leq(x, self.apply(x))) {
            return Err(Error::PreconditionViolated(format!("{} is not post-fixed", l.label(x))));
        }
        let y = self.model.lex_sup(xs)?;
        Ok(l.leq(y, self.apply(y)))
    }

    /// The `⊑`-inf of `≤`-pre-fixed points is `≤`-pre-fixed.
    pub fn check_inf_pre_fixed(&self, xs: &[usize]) -> Result<bool> {
        self.require_weakly_monotone()?;
        let l = self.model.lattice();
        if let Some(&x) = xs.iter().find(|&&x| !l.leq(self.apply(x), x)) {
            return Err(Error::PreconditionViolated(format!("{} is not pre-fixed", l.label(x))));
        }
        let y = self.model.lex_inf(xs)?;
        Ok(l.leq(self.apply(y), y))
    }

    pub fn post_fixed_points(&self) -> Vec<usize> {
        let l = self.model.lattice();
        self.model.elements().filter(|&x| l.leq(x, self.apply(x))).collect()
    }

    pub fn pre_fixed_points(&self) -> Vec<usize> {
        let l = self.model.lattice();
        self.model.elements().filter(|&x| l.leq(self.apply(x), x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteLattice;

    fn chain_model() -> Arc<StratifiedLattice> {
        Arc::new(StratifiedLattice::discrete(Arc::new(FiniteLattice::chain(&["a", "b", "c"]))))
    }

    #[test]
    fn identity_has_bottom_as_least_fixed_point() {
        let f = EndoFunction::identity(chain_model());
        assert_eq!(f.stratified_lfp().unwrap(), 0);
        assert_eq!(f.gfp_below(&[]).unwrap(), 2);
        let fix = f.fixed_point_lattice().unwrap();
        assert_eq!(fix.points, vec![0, 1, 2]);
        assert!(fix.verdict.holds());
    }

    #[test]
    fn constant_is_its_own_fixed_point() {
        let f = EndoFunction::constant(chain_model(), 1);
        assert_eq!(f.stratified_lfp().unwrap(), 1);
        assert_eq!(f.fixed_points(), vec![1]);
    }

    #[test]
    fn antitone_map_is_rejected() {
        let f = EndoFunction::new(chain_model(), vec![2, 1, 0]).unwrap();
        assert!(!f.is_weakly_monotone());
        assert!(matches!(f.stratified_lfp(), Err(Error::NotWeaklyMonotone { level: 0, .. })));
    }

    #[test]
    fn lfp_above_requires_post_fixed_points() {
        let f = EndoFunction::constant(chain_model(), 0);
        assert!(matches!(f.lfp_above(&[2]), Err(Error::PreconditionViolated(_))));
    }
}

//! Exhaustive and seeded generation of small lattices, stratifications,
//! weakly monotone endofunctions and projections.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fixpoint::EndoFunction;
use crate::lattice::FiniteLattice;
use crate::maps::{projection_adjoint, LatticeMap};
use crate::relation::Relation;
use crate::stratified::{is_model, StratifiedLattice};

pub const MAX_ELEMENTS: usize = 7;
pub const MAX_DEPTH: usize = 3;
/// Largest lattice for which stratifications are enumerated.
pub const MAX_STRATIFIED_ELEMENTS: usize = 6;
/// Largest model on which all weakly monotone maps are enumerated.
pub const EXHAUSTIVE_FUNCTION_ELEMENTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_elements: usize,
    pub max_depth: usize,
    pub seed: u64,
    pub sample_count: usize,
}

impl EnumerationBudget {
    pub fn new(max_elements: usize, max_depth: usize) -> Result<Self> {
        let b = EnumerationBudget {
            max_elements,
            max_depth,
            seed: 0,
            sample_count: 256,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, sample_count: usize) -> Self {
        self.sample_count = sample_count;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_elements > MAX_ELEMENTS {
            return Err(Error::BudgetExceeded(format!(
                "{} elements; at most {MAX_ELEMENTS}",
                self.max_elements
            )));
        }
        if self.max_depth > MAX_DEPTH {
            return Err(Error::BudgetExceeded(format!("depth {}; at most {MAX_DEPTH}", self.max_depth)));
        }
        Ok(())
    }
}

/// Bit-matrix code of an order under a relabeling.
fn order_code(le: &[Vec<bool>], perm: &[usize]) -> u64 {
    let n = le.len();
    let mut code = 0u64;
    for a in 0..n {
        for b in 0..n {
            if le[a][b] {
                code |= 1 << (perm[a] * n + perm[b]);
            }
        }
    }
    code
}

fn for_each_permutation(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Smallest code over relabelings that keep `0` as bottom and `n-1` as top.
fn canonical_code(le: &[Vec<bool>]) -> u64 {
    let n = le.len();
    if n <= 2 {
        return order_code(le, &(0..n).collect::<Vec<_>>());
    }
    let mut middle: Vec<usize> = (1..n - 1).collect();
    let mut best = u64::MAX;
    for_each_permutation(&mut middle, 0, &mut |m| {
        let mut perm = vec![0; n];
        perm[n - 1] = n - 1;
        for (i, &p) in m.iter().enumerate() {
            perm[i + 1] = p;
        }
        best = best.min(order_code(le, &perm));
    });
    best
}

fn has_all_joins(le: &[Vec<bool>]) -> bool {
    let n = le.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ups: Vec<usize> = (0..n).filter(|&u| le[a][u] && le[b][u]).collect();
            ups.iter().any(|&j| ups.iter().all(|&u| le[j][u]))
        })
    })
}

/// All lattices on `n` elements up to isomorphism, in canonical order.
/// Element `0` is the bottom, `n-1` the top, and `i ≤ j` only when `i ≤ j`
/// as numbers.
pub fn enumerate_lattices(n: usize) -> Result<Vec<FiniteLattice>> {
    if n > MAX_ELEMENTS {
        return Err(Error::BudgetExceeded(format!("{n} elements; at most {MAX_ELEMENTS}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let free: Vec<(usize, usize)> = (1..n.saturating_sub(1))
        .flat_map(|i| (i + 1..n - 1).map(move |j| (i, j)))
        .collect();
    let mut found: BTreeMap<u64, Vec<Vec<bool>>> = BTreeMap::new();
    for mask in 0u64..1 << free.len() {
        let mut le = vec![vec![false; n]; n];
        le[0].fill(true);
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
            row[n - 1] = true;
        }
        for (k, &(i, j)) in free.iter().enumerate() {
            le[i][j] = mask >> k & 1 == 1;
        }
        let transitive = (0..n).all(|a| (0..n).all(|b| !le[a][b] || (0..n).all(|c| !le[b][c] || le[a][c])));
        if !transitive || !has_all_joins(&le) {
            continue;
        }
        found.entry(canonical_code(&le)).or_insert(le);
    }
    found
        .into_values()
        .map(|le| {
            let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            FiniteLattice::from_relation(labels, &Relation::from_fn(n, |a, b| le[a][b]))
        })
        .collect()
}

/// Partitions of the lattice whose blocks each contain their own meet, given
/// as the map sending each element to that meet.
pub fn restriction_candidates(lattice: &FiniteLattice) -> Vec<Vec<usize>> {
    let n = lattice.len();
    let mut out = Vec::new();
    let mut block = vec![0usize; n];
    fn grow(i: usize, blocks: usize, block: &mut Vec<usize>, lattice: &FiniteLattice, out: &mut Vec<Vec<usize>>) {
        let n = block.len();
        if i == n {
            let mut map = vec![0; n];
            for b in 0..blocks {
                let members: Vec<usize> = (0..n).filter(|&x| block[x] == b).collect();
                let m = lattice.meet_all(members.iter().copied());
                if block[m] != b {
                    return;
                }
                for &x in &members {
                    map[x] = m;
                }
            }
            out.push(map);
            return;
        }
        for b in 0..=blocks {
            block[i] = b;
            grow(i + 1, blocks.max(b + 1), block, lattice, out);
        }
    }
    if n > 0 {
        grow(0, 0, &mut block, lattice, &mut out);
    }
    out
}

fn refines(finer: &[usize], coarser: &[usize]) -> bool {
    (0..finer.len()).all(|x| {
        (0..finer.len()).all(|y| finer[x] != finer[y] || coarser[x] == coarser[y])
    })
}

/// Every family of `depth` preorders on `lattice` passing A1 to A6. Families
/// come from chains of ever finer partitions, each block holding its own
/// meet, with the preorders they force; the axiom check filters the rest.
pub fn enumerate_stratifications(lattice: &Arc<FiniteLattice>, depth: usize) -> Result<Vec<StratifiedLattice>> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(Error::BudgetExceeded(format!("depth {depth}; between 1 and {MAX_DEPTH}")));
    }
    if lattice.len() > MAX_STRATIFIED_ELEMENTS {
        return Err(Error::BudgetExceeded(format!(
            "{} elements; at most {MAX_STRATIFIED_ELEMENTS}",
            lattice.len()
        )));
    }
    let candidates = restriction_candidates(lattice);
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<Relation>> = HashSet::new();
    let mut chain: Vec<usize> = Vec::new();
    fn extend(
        chain: &mut Vec<usize>,
        depth: usize,
        candidates: &[Vec<usize>],
        lattice: &Arc<FiniteLattice>,
        seen: &mut HashSet<Vec<Relation>>,
        out: &mut Vec<StratifiedLattice>,
    ) {
        if chain.len() == depth {
            let maps: Vec<Vec<usize>> = chain.iter().map(|&i| candidates[i].clone()).collect();
            if let Ok(s) = StratifiedLattice::from_restrictions(lattice.clone(), &maps) {
                if is_model(&s) && seen.insert(s.explicit_preorders().to_vec()) {
                    out.push(s);
                }
            }
            return;
        }
        for i in 0..candidates.len() {
            if chain.last().is_none_or(|&p| refines(&candidates[i], &candidates[p])) {
                chain.push(i);
                extend(chain, depth, candidates, lattice, seen, out);
                chain.pop();
            }
        }
    }
    extend(&mut chain, depth, &candidates, lattice, &mut seen, &mut out);
    Ok(out)
}

/// All models with `1..=max_elements` elements and depth `1..=max_depth`,
/// lattices in canonical order, then by depth.
pub fn enumerate_models(budget: &EnumerationBudget) -> Result<Vec<StratifiedLattice>> {
    budget.validate()?;
    if budget.max_elements > MAX_STRATIFIED_ELEMENTS {
        return Err(Error::BudgetExceeded(format!(
            "{} elements; at most {MAX_STRATIFIED_ELEMENTS}",
            budget.max_elements
        )));
    }
    let mut out = Vec::new();
    for n in 1..=budget.max_elements {
        for l in enumerate_lattices(n)? {
            let l = Arc::new(l);
            for depth in 1..=budget.max_depth {
                out.extend(enumerate_stratifications(&l, depth)?);
            }
        }
    }
    Ok(out)
}

/// A seeded selection of `budget.sample_count` models from
/// [`enumerate_models`].
pub fn sample_models(budget: &EnumerationBudget) -> Result<Vec<StratifiedLattice>> {
    let mut all = enumerate_models(budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    all.shuffle(&mut rng);
    all.truncate(budget.sample_count);
    Ok(all)
}

/// Tables `f` such that `x ⊑_α y ⇒ f(x) ⊑_α f(y)` at every level.
/// Exhaustive in lexicographic table order up to five elements; above that,
/// `budget.sample_count` seeded random searches, deduplicated.
pub fn enumerate_weakly_monotone(
    model: &Arc<StratifiedLattice>,
    budget: &EnumerationBudget,
) -> Result<Vec<EndoFunction>> {
    let n = model.len();
    let levels: Vec<usize> = model.levels().collect();
    let consistent = |table: &[usize], i: usize, v: usize| {
        (0..i).all(|j| {
            levels.iter().all(|&a| {
                (!model.sq(a, i, j) || model.sq(a, v, table[j])) && (!model.sq(a, j, i) || model.sq(a, table[j], v))
            })
        }) && levels.iter().all(|&a| !model.sq(a, i, i) || model.sq(a, v, v))
    };
    let mut tables: Vec<Vec<usize>> = Vec::new();
    if n <= EXHAUSTIVE_FUNCTION_ELEMENTS {
        let mut table = Vec::with_capacity(n);
        fn fill(
            table: &mut Vec<usize>,
            n: usize,
            consistent: &dyn Fn(&[usize], usize, usize) -> bool,
            out: &mut Vec<Vec<usize>>,
        ) {
            let i = table.len();
            if i == n {
                out.push(table.clone());
                return;
            }
            for v in 0..n {
                if consistent(table, i, v) {
                    table.push(v);
                    fill(table, n, consistent, out);
                    table.pop();
                }
            }
        }
        fill(&mut table, n, &consistent, &mut tables);
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let mut seen = HashSet::new();
        'sample: for _ in 0..budget.sample_count {
            let mut table: Vec<usize> = Vec::with_capacity(n);
            for i in 0..n {
                let options: Vec<usize> = (0..n).filter(|&v| consistent(&table, i, v)).collect();
                if options.is_empty() {
                    continue 'sample;
                }
                table.push(options[rng.gen_range(0..options.len())]);
            }
            if seen.insert(table.clone()) {
                tables.push(table);
            }
        }
    }
    tables
        .into_iter()
        .map(|t| EndoFunction::new(model.clone(), t))
        .collect()
}

/// Monotone maps between two lattices in lexicographic table order.
pub fn enumerate_monotone_maps(source: &Arc<FiniteLattice>, target: &Arc<FiniteLattice>) -> Vec<LatticeMap> {
    let n = source.len();
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(n);
    fn fill(
        table: &mut Vec<usize>,
        source: &Arc<FiniteLattice>,
        target: &Arc<FiniteLattice>,
        out: &mut Vec<LatticeMap>,
    ) {
        let i = table.len();
        if i == source.len() {
            out.push(LatticeMap::new(source.clone(), target.clone(), table.clone()).expect("table in range"));
            return;
        }
        for v in target.elements() {
            let ok = (0..i).all(|j| {
                (!source.leq(j, i) || target.leq(table[j], v)) && (!source.leq(i, j) || target.leq(v, table[j]))
            });
            if ok {
                table.push(v);
                fill(table, source, target, out);
                table.pop();
            }
        }
    }
    fill(&mut table, source, target, &mut out);
    out
}

/// Monotone surjections that have an embedding as lower adjoint.
pub fn enumerate_projections(source: &Arc<FiniteLattice>, target: &Arc<FiniteLattice>) -> Vec<LatticeMap> {
    enumerate_monotone_maps(source, target)
        .into_iter()
        .filter(|h| h.is_surjective() && projection_adjoint(h).is_ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lattice_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| enumerate_lattices(n).unwrap().len()).collect();
        assert_eq!(counts, vec![0, 1, 1, 1, 2, 5]);
    }

    #[test]
    fn discrete_is_emitted() {
        let l = Arc::new(FiniteLattice::chain(&["a", "b", "c"]));
        let all = enumerate_stratifications(&l, 1).unwrap();
        assert!(all.contains(&StratifiedLattice::discrete(l)));
    }

    #[test]
    fn budget_bounds() {
        assert!(matches!(EnumerationBudget::new(8, 1), Err(Error::BudgetExceeded(_))));
        assert!(matches!(EnumerationBudget::new(3, 4), Err(Error::BudgetExceeded(_))));
        assert!(matches!(enumerate_lattices(8), Err(Error::BudgetExceeded(_))));
    }
}

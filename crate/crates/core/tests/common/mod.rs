//! Brute-force oracles shared by the integration tests. Each one works from
//! definitions only and avoids the library routine it is compared with.
#![allow(dead_code)]

use std::sync::Arc;

use stratlat::enumerate::{enumerate_models, EnumerationBudget};
use stratlat::fixpoint::EndoFunction;
use stratlat::{FiniteLattice, Relation, StratifiedLattice};

pub fn models(max_elements: usize, max_depth: usize) -> Vec<Arc<StratifiedLattice>> {
    let budget = EnumerationBudget::new(max_elements, max_depth).unwrap();
    enumerate_models(&budget).unwrap().into_iter().map(Arc::new).collect()
}

/// The `≤`-least member of the `=_α`-class of `x`, found by scanning.
pub fn scan_restrict(s: &StratifiedLattice, x: usize, alpha: usize) -> Option<usize> {
    let l = s.lattice();
    let class: Vec<usize> = s.elements().filter(|&z| s.sq(alpha, x, z) && s.sq(alpha, z, x)).collect();
    class.iter().copied().find(|&m| class.iter().all(|&z| l.leq(m, z)))
}

/// `x ⊑ y` from the definition: equal, or strictly `⊑_α`-below at a level
/// where they were `=_β` at all earlier levels. The library does not need
/// the prefix condition, so requiring it here keeps the oracle separate.
pub fn scan_lex_leq(s: &StratifiedLattice, x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    for a in s.levels() {
        let up = s.sq(a, x, y);
        let down = s.sq(a, y, x);
        if up && !down {
            return true;
        }
        if !(up && down) {
            return false;
        }
    }
    false
}

/// `x ⊑ y` through restrictions: the first level where they differ has
/// `x|_α < y|_α`.
pub fn restriction_lex_leq(s: &StratifiedLattice, x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    let l = s.lattice();
    for a in s.levels() {
        let (rx, ry) = (scan_restrict(s, x, a).unwrap(), scan_restrict(s, y, a).unwrap());
        if rx != ry {
            return l.lt(rx, ry);
        }
    }
    false
}

/// The least element of `candidates` under `leq`, if any.
pub fn least(candidates: &[usize], leq: impl Fn(usize, usize) -> bool) -> Option<usize> {
    candidates.iter().copied().find(|&m| candidates.iter().all(|&z| leq(m, z)))
}

pub fn greatest(candidates: &[usize], leq: impl Fn(usize, usize) -> bool) -> Option<usize> {
    candidates.iter().copied().find(|&m| candidates.iter().all(|&z| leq(z, m)))
}

pub fn scan_lex_sup(s: &StratifiedLattice, xs: &[usize]) -> Option<usize> {
    let ups: Vec<usize> = s.elements().filter(|&u| xs.iter().all(|&x| scan_lex_leq(s, x, u))).collect();
    least(&ups, |a, b| scan_lex_leq(s, a, b))
}

pub fn scan_lex_inf(s: &StratifiedLattice, xs: &[usize]) -> Option<usize> {
    let downs: Vec<usize> = s.elements().filter(|&u| xs.iter().all(|&x| scan_lex_leq(s, u, x))).collect();
    greatest(&downs, |a, b| scan_lex_leq(s, a, b))
}

/// The `⊑`-minimum of `{z : f(z) ⊑ z}`.
pub fn scan_least_prefixed(f: &EndoFunction) -> Option<usize> {
    let s = f.model();
    let pre: Vec<usize> = s.elements().filter(|&z| scan_lex_leq(s, f.apply(z), z)).collect();
    least(&pre, |a, b| scan_lex_leq(s, a, b))
}

/// All tables on `n` points passing `keep`.
pub fn all_tables(n: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut i| {
            let mut t = vec![0; n];
            for slot in t.iter_mut() {
                *slot = i % n;
                i /= n;
            }
            t
        })
        .filter(|t| keep(t))
        .collect()
}

pub fn is_weakly_monotone_table(s: &StratifiedLattice, t: &[usize]) -> bool {
    s.levels().all(|a| {
        s.elements()
            .all(|x| s.elements().all(|y| !s.sq(a, x, y) || s.sq(a, t[x], t[y])))
    })
}

/// Every preorder on `n` points.
pub fn all_preorders(n: usize) -> Vec<Relation> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    (0u64..1 << off.len())
        .map(|mask| {
            Relation::from_pairs(
                n,
                (0..n).map(|i| (i, i)).chain(
                    off.iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &p)| p),
                ),
            )
        })
        .filter(|r| r.is_transitive())
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lattices on `n` points counted up to isomorphism without canonical
/// forms: every labeled lattice order contributes `|Aut| / n!`.
pub fn count_lattices_by_orbits(n: usize) -> usize {
    let perms = permutations(n);
    let mut weighted = 0usize;
    for r in all_preorders(n) {
        if r.antisymmetry_violation().is_some() {
            continue;
        }
        let le = |a: usize, b: usize| r.contains(a, b);
        let has_joins = (0..n).all(|a| {
            (0..n).all(|b| {
                let ups: Vec<usize> = (0..n).filter(|&u| le(a, u) && le(b, u)).collect();
                ups.iter().any(|&j| ups.iter().all(|&u| le(j, u)))
            })
        });
        let has_bottom = (0..n).any(|z| (0..n).all(|x| le(z, x)));
        if n == 0 || !has_joins || !has_bottom {
            continue;
        }
        let aut = perms
            .iter()
            .filter(|p| (0..n).all(|a| (0..n).all(|b| le(a, b) == le(p[a], p[b]))))
            .count();
        weighted += aut;
    }
    let fact: usize = (1..=n).product();
    assert_eq!(weighted % fact, 0);
    weighted / fact
}

pub fn lattice(labels: &[&str], covers: &[(&str, &str)]) -> Arc<FiniteLattice> {
    Arc::new(FiniteLattice::new(labels, covers).unwrap())
}

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use stratlat::enumerate::{enumerate_weakly_monotone, EnumerationBudget};
use stratlat::fixpoint::EndoFunction;
use stratlat::fixtures;
use stratlat::lp::{program_function, Program};
use stratlat::{Error, StratifiedLattice, Verdict};

fn collapsed() -> Arc<StratifiedLattice> {
    Arc::new(fixtures::collapsed_bottom_model())
}

fn weakly_monotone(s: &Arc<StratifiedLattice>) -> Vec<EndoFunction> {
    let budget = EnumerationBudget::new(s.len().max(1), s.depth().max(1)).unwrap();
    enumerate_weakly_monotone(s, &budget).unwrap()
}

/// `⊑`-least fixed point that is `⊑`-above every member of `xs`.
fn scan_lfp_above(f: &EndoFunction, xs: &[usize]) -> Option<usize> {
    let s = f.model();
    let fix: Vec<usize> = f
        .fixed_points()
        .into_iter()
        .filter(|&y| xs.iter().all(|&x| common::scan_lex_leq(s, x, y)))
        .collect();
    common::least(&fix, |a, b| common::scan_lex_leq(s, a, b))
}

fn scan_gfp_below(f: &EndoFunction, xs: &[usize]) -> Option<usize> {
    let s = f.model();
    let fix: Vec<usize> = f
        .fixed_points()
        .into_iter()
        .filter(|&y| xs.iter().all(|&x| common::scan_lex_leq(s, y, x)))
        .collect();
    common::greatest(&fix, |a, b| common::scan_lex_leq(s, a, b))
}

#[test]
fn weak_monotonicity_matches_the_definition() {
    for s in common::models(4, 2) {
        let n = s.len();
        let all = common::all_tables(n, |_| true);
        for t in &all {
            let f = EndoFunction::new(s.clone(), t.clone()).unwrap();
            assert_eq!(f.is_weakly_monotone(), common::is_weakly_monotone_table(&s, t));
            assert_eq!(f.weak_monotonicity_violation().is_none(), f.is_weakly_monotone());
        }
        let listed: Vec<Vec<usize>> = weakly_monotone(&s).into_iter().map(|f| f.table().to_vec()).collect();
        let expected: Vec<Vec<usize>> = all.into_iter().filter(|t| common::is_weakly_monotone_table(&s, t)).collect();
        let mut a = listed.clone();
        let mut b = expected.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}

#[test]
fn least_fixed_point_is_least_prefixed() {
    for s in common::models(5, 2) {
        for f in weakly_monotone(&s) {
            let y = f.stratified_lfp().unwrap();
            assert_eq!(f.apply(y), y);
            assert_eq!(Some(y), common::scan_least_prefixed(&f));
            assert_eq!(Some(y), scan_lfp_above(&f, &[]));
        }
    }
}

#[test]
fn trace_levels_are_the_restrictions_of_the_result() {
    let s = collapsed();
    for f in weakly_monotone(&s) {
        let t = f.stratified_lfp_traced().unwrap();
        assert_eq!(t.steps.len(), s.depth() + 1);
        for step in &t.steps {
            assert_eq!(step.value, s.res(t.result, step.level));
            assert_eq!(step.iterates.last().copied().unwrap_or(step.start), step.value);
            let mut prev = step.start;
            for &u in &step.iterates {
                assert!(s.lattice().leq(prev, u));
                prev = u;
            }
        }
    }
}

#[test]
fn bounded_fixed_points_match_the_scan() {
    for s in common::models(4, 2) {
        for f in weakly_monotone(&s) {
            let post = f.post_fixed_points();
            let pre = f.pre_fixed_points();
            for mask in 0u32..(1 << post.len()).min(64) {
                let xs: Vec<usize> = (0..post.len()).filter(|i| mask >> i & 1 == 1).map(|i| post[i]).collect();
                assert_eq!(Some(f.lfp_above(&xs).unwrap()), scan_lfp_above(&f, &xs));
                assert!(f.check_supp_post_fixed(&xs).unwrap());
            }
            for mask in 0u32..(1 << pre.len()).min(64) {
                let xs: Vec<usize> = (0..pre.len()).filter(|i| mask >> i & 1 == 1).map(|i| pre[i]).collect();
                assert_eq!(Some(f.gfp_below(&xs).unwrap()), scan_gfp_below(&f, &xs));
                assert!(f.check_inf_pre_fixed(&xs).unwrap());
            }
        }
    }
}

#[test]
fn fixed_points_form_a_complete_lattice() {
    for s in common::models(5, 2) {
        for f in weakly_monotone(&s) {
            let fl = f.fixed_point_lattice().unwrap();
            assert!(fl.exhaustive);
            assert_eq!(fl.verdict, Verdict::Holds);
            assert_eq!(fl.subsets_checked, 1 << fl.points.len());
        }
    }
}

#[test]
fn preconditions_are_enforced() {
    let s = collapsed();
    let l = s.lattice();
    let top = l.top();
    let f = EndoFunction::constant(s.clone(), l.bottom());
    assert!(matches!(f.lfp_above(&[top]), Err(Error::PreconditionViolated(_))));
    let g = EndoFunction::constant(s.clone(), top);
    assert!(matches!(g.gfp_below(&[l.bottom()]), Err(Error::PreconditionViolated(_))));
    let bad = common::all_tables(s.len(), |t| !common::is_weakly_monotone_table(&s, t))
        .into_iter()
        .next()
        .unwrap();
    let h = EndoFunction::new(s.clone(), bad).unwrap();
    assert!(matches!(h.stratified_lfp(), Err(Error::NotWeaklyMonotone { .. })));
    assert!(EndoFunction::new(s.clone(), vec![0; s.len() + 1]).is_err());
}

#[test]
fn identity_and_constants() {
    let s = collapsed();
    let l = s.lattice();
    let id = EndoFunction::identity(s.clone());
    assert_eq!(id.stratified_lfp().unwrap(), l.bottom());
    for c in s.elements() {
        let f = EndoFunction::constant(s.clone(), c);
        assert_eq!(f.stratified_lfp().unwrap(), c);
        assert_eq!(f.fixed_points(), vec![c]);
    }
}

/// The two monotonicity notions are independent of `⊑`-monotonicity and of
/// `≤`-monotonicity, so the level-wise construction is not a plain Tarski
/// iteration.
#[test]
fn monotonicity_notions_differ() {
    let s = collapsed();
    let l = s.lattice();
    let all = common::all_tables(s.len(), |_| true);
    let lex_monotone = |t: &[usize]| {
        s.elements()
            .all(|x| s.elements().all(|y| !s.lex_leq(x, y) || s.lex_leq(t[x], t[y])))
    };
    let leq_monotone = |t: &[usize]| s.elements().all(|x| s.elements().all(|y| !l.leq(x, y) || l.leq(t[x], t[y])));
    let weak_not_lex = all
        .iter()
        .find(|t| common::is_weakly_monotone_table(&s, t) && !lex_monotone(t))
        .expect("weakly monotone but not lex monotone");
    let f = EndoFunction::new(s.clone(), weak_not_lex.clone()).unwrap();
    assert!(f.is_weakly_monotone());
    assert_eq!(f.apply(f.stratified_lfp().unwrap()), f.stratified_lfp().unwrap());

    let leq_not_weak = all
        .iter()
        .find(|t| leq_monotone(t) && !common::is_weakly_monotone_table(&s, t))
        .expect("order preserving but not weakly monotone");
    let g = EndoFunction::new(s.clone(), leq_not_weak.clone()).unwrap();
    let (level, x, y) = g.weak_monotonicity_violation().unwrap();
    assert!(s.sq(level, x, y) && !s.sq(level, g.apply(x), g.apply(y)));
}

#[test]
fn level_components_of_a_model_function() {
    let s = collapsed();
    for f in weakly_monotone(&s) {
        let fam = f.level_components().unwrap();
        for (a, c) in fam.components.iter().enumerate() {
            assert_eq!(c.members, s.level_set(a));
            for (i, &u) in c.members.iter().enumerate() {
                assert_eq!(c.table[i], s.res(f.apply(u), a));
                assert_eq!(fam.apply(a, u), Some(f.component(a, u)));
            }
        }
    }
}

#[test]
fn program_operator_components() {
    let p = Program::parse("p :- not q.\nq :- not p.").unwrap();
    let (v, f) = program_function(&p, 2).unwrap();
    assert!(f.is_weakly_monotone());
    let fam = f.level_components().unwrap();
    assert_eq!(fam.components.len(), v.model.depth() + 1);
    let y = f.stratified_lfp().unwrap();
    let labels: Vec<String> = v.point(y).iter().map(|t| t.to_string()).collect();
    assert_eq!(labels, vec!["0", "0"]);
}

fn model_and_function() -> impl Strategy<Value = (Arc<StratifiedLattice>, Vec<usize>)> {
    let ms: Vec<Arc<StratifiedLattice>> = common::models(6, 2).into_iter().filter(|s| s.len() == 6).collect();
    (0..ms.len()).prop_flat_map(move |i| {
        let s = ms[i].clone();
        let n = s.len();
        (Just(s), prop::collection::vec(0..n, n))
    })
}

proptest! {
    #[test]
    fn random_functions_either_fail_weak_monotonicity_or_reach_the_least_prefixed((s, t) in model_and_function()) {
        let f = EndoFunction::new(s.clone(), t.clone()).unwrap();
        if common::is_weakly_monotone_table(&s, &t) {
            let y = f.stratified_lfp().unwrap();
            prop_assert_eq!(Some(y), common::scan_least_prefixed(&f));
        } else {
            let is_weak_err = matches!(f.stratified_lfp(), Err(Error::NotWeaklyMonotone { .. }));
            prop_assert!(is_weak_err);
        }
    }
}

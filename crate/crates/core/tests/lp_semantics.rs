use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use stratlat::lp::{
    collapse3, generic_minimum_model, interp_lex_leq, program_function, rw_minimum_model, tp_step,
    verify_fp_weak_monotone, wfs_oracle, Literal, Program, Rule, Truth3, TruthValue,
};
use stratlat::Error;
use TruthValue::{Zero, F, T};

fn corpus() -> BTreeMap<String, Program> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/programs");
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "lp") {
            let text = fs::read_to_string(&path).unwrap();
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            out.insert(name, Program::parse(&text).unwrap());
        }
    }
    out
}

fn by_name(p: &Program, values: &[TruthValue]) -> BTreeMap<String, TruthValue> {
    p.atoms().iter().cloned().zip(values.iter().copied()).collect()
}

/// `I ⊑ J` from the level-wise description: at the first level where the
/// atoms valued `T_α` or `F_α` differ, `J` has more `T_α` and fewer `F_α`.
fn oracle_leq(a: &[TruthValue], b: &[TruthValue]) -> bool {
    if a == b {
        return true;
    }
    let top = a.iter().chain(b).filter_map(|v| v.level()).max().unwrap_or(0);
    for alpha in 0..=top {
        let ts = |i: &[TruthValue]| -> Vec<bool> { i.iter().map(|&v| v == T(alpha)).collect() };
        let fs = |i: &[TruthValue]| -> Vec<bool> { i.iter().map(|&v| v == F(alpha)).collect() };
        let (ta, tb, fa, fb) = (ts(a), ts(b), fs(a), fs(b));
        if ta == tb && fa == fb {
            continue;
        }
        let more_true = ta.iter().zip(&tb).all(|(&x, &y)| !x || y);
        let fewer_false = fa.iter().zip(&fb).all(|(&x, &y)| !y || x);
        return more_true && fewer_false;
    }
    // Same leveled values everywhere, so they differ only in `0` positions,
    // which cannot happen for distinct interpretations.
    false
}

/// The `⊑`-least fixed point of the operator among interpretations whose
/// levels stay below `cap`.
fn scan_minimum(p: &Program, cap: usize) -> Option<Vec<TruthValue>> {
    let n = p.atoms().len();
    let mut values: Vec<TruthValue> = (0..cap).flat_map(|a| [F(a), T(a)]).collect();
    values.push(Zero);
    let mut fixed = Vec::new();
    let total = values.len().pow(n as u32);
    for mut code in 0..total {
        let interp: Vec<TruthValue> = (0..n)
            .map(|_| {
                let v = values[code % values.len()];
                code /= values.len();
                v
            })
            .collect();
        if tp_step(p, &interp) == interp {
            fixed.push(interp);
        }
    }
    fixed
        .iter()
        .find(|m| fixed.iter().all(|z| oracle_leq(m, z)))
        .cloned()
}

#[test]
fn corpus_is_large_enough() {
    let c = corpus();
    assert!(c.len() >= 20);
    assert!(c.keys().any(|k| k.starts_with("win_")));
    assert!(c.values().any(|p| p.atoms().len() >= 4));
}

#[test]
fn operator_examples() {
    let p = Program::parse("p :- q, not r.").unwrap();
    let (q, r) = (p.atom_index("q").unwrap(), p.atom_index("r").unwrap());
    let pi = p.atom_index("p").unwrap();
    let mut i = vec![F(0); 3];
    i[q] = T(2);
    i[r] = F(1);
    assert_eq!(tp_step(&p, &i)[pi], T(2));
    i[r] = T(0);
    assert_eq!(tp_step(&p, &i)[pi], F(1));
    i[r] = Zero;
    assert_eq!(tp_step(&p, &i)[pi], Zero);
    let two = Program::parse("p :- not q.\np :- r.").unwrap();
    let mut j = vec![F(0); 3];
    j[two.atom_index("q").unwrap()] = T(0);
    j[two.atom_index("r").unwrap()] = F(4);
    // F_1 < F_4, so the later false wins.
    assert_eq!(tp_step(&two, &j)[two.atom_index("p").unwrap()], F(4));
}

#[test]
fn expected_values() {
    let c = corpus();
    let cases: &[(&str, &[(&str, TruthValue)])] = &[
        ("fact", &[("p", T(0))]),
        ("single_negation", &[("p", F(0)), ("q", T(1))]),
        ("self_negation", &[("p", Zero)]),
        ("even_loop", &[("p", Zero), ("q", Zero)]),
        ("odd_loop", &[("p", Zero), ("q", Zero), ("r", Zero)]),
        ("positive_loop", &[("p", F(0)), ("q", F(0))]),
        ("loop_through_negation", &[("p", Zero), ("q", Zero)]),
        ("guarded_paradox", &[("p", Zero), ("q", T(0))]),
        ("blocked_paradox", &[("p", F(0)), ("q", F(0))]),
        ("negation_chain_3", &[("p0", T(0)), ("p1", F(1)), ("p2", T(2)), ("p3", F(3))]),
        (
            "negation_chain_5",
            &[("a0", F(0)), ("a1", T(1)), ("a2", F(2)), ("a3", T(3)), ("a4", F(4)), ("a5", T(5))],
        ),
        ("win_chain", &[("win_c", F(0)), ("win_b", T(1)), ("win_a", F(2))]),
        ("win_cycle", &[("win_c", F(0)), ("win_b", T(1)), ("win_a", F(2))]),
        ("win_draw", &[("win_a", Zero), ("win_b", Zero)]),
        ("double_negation_support", &[("r", T(0)), ("q", F(1)), ("p", T(2))]),
        ("undefined_feeds_positive", &[("p", Zero), ("q", Zero), ("r", Zero)]),
    ];
    for (name, expected) in cases {
        let p = &c[*name];
        let got = by_name(p, &rw_minimum_model(p).unwrap().values);
        for (atom, v) in *expected {
            assert_eq!(got[*atom], *v, "{name}: {atom}");
        }
    }
}

#[test]
fn collapse_agrees_with_well_founded_semantics() {
    for (name, p) in corpus() {
        let m = rw_minimum_model(&p).unwrap();
        assert_eq!(m.collapsed(), wfs_oracle(&p), "{name}");
    }
}

#[test]
fn minimum_matches_the_scan_on_small_programs() {
    for (name, p) in corpus() {
        let n = p.atoms().len();
        if n > 3 {
            continue;
        }
        let m = rw_minimum_model(&p).unwrap();
        assert_eq!(Some(m.values), scan_minimum(&p, n + 1), "{name}");
    }
}

#[test]
fn trace_invariants() {
    for (name, p) in corpus() {
        let m = rw_minimum_model(&p).unwrap();
        for t in &m.levels {
            for pair in t.iterates.windows(2) {
                assert!(interp_lex_leq(&pair[0], &pair[1]), "{name}");
                assert!(oracle_leq(&pair[0], &pair[1]), "{name}");
            }
            for &a in &t.frozen {
                assert_eq!(m.values[a].level(), Some(t.level), "{name}");
                assert_eq!(m.freeze_level(a), Some(t.level));
            }
        }
        for (a, v) in m.values.iter().enumerate() {
            assert_eq!(m.undefined.contains(&a), *v == Zero, "{name}");
        }
        if !m.undefined.is_empty() {
            assert!(m.levels.last().unwrap().frozen.is_empty());
        }
    }
}

fn truncated(values: &[TruthValue], depth: usize) -> Vec<TruthValue> {
    values.iter().map(|v| v.truncate(depth)).collect()
}

#[test]
fn generic_solver_matches_on_small_programs() {
    let mut checked = 0;
    for (name, p) in corpus() {
        if p.atoms().len() > 2 {
            continue;
        }
        for depth in 1..=2 {
            assert!(verify_fp_weak_monotone(&p, depth).unwrap(), "{name}");
            let rw = rw_minimum_model(&p).unwrap();
            assert_eq!(generic_minimum_model(&p, depth).unwrap(), truncated(&rw.values, depth), "{name}");
        }
        checked += 1;
    }
    assert!(checked >= 8);
}

#[test]
fn large_state_spaces_are_refused() {
    let p = Program::parse("a.\nb.\nc.").unwrap();
    assert!(matches!(program_function(&p, 1), Err(Error::StateSpaceTooLarge(_))));
    let q = Program::parse("a.").unwrap();
    assert!(matches!(program_function(&q, 3), Err(Error::StateSpaceTooLarge(_))));
}

#[test]
fn parse_errors_have_positions() {
    let r = Program::parse("p :- q\nr.");
    assert!(matches!(r, Err(Error::Parse { .. })), "{r:?}");
    let r = Program::parse("p :- not .");
    assert!(matches!(r, Err(Error::Parse { line: 1, .. })), "{r:?}");
}

#[test]
fn printing_round_trips() {
    for (_, p) in corpus() {
        let again = Program::parse(&p.to_string()).unwrap();
        assert_eq!(again.rules().len(), p.rules().len());
        assert_eq!(rw_minimum_model(&again).unwrap().values.len(), again.atoms().len());
    }
}

fn random_program(max_atoms: usize) -> impl Strategy<Value = Program> {
    (1..=max_atoms).prop_flat_map(|n| {
        let lit = (0..n, any::<bool>()).prop_map(|(atom, positive)| Literal { atom, positive });
        let rule = (0..n, prop::collection::vec(lit, 0..3)).prop_map(|(head, body)| Rule { head, body });
        prop::collection::vec(rule, 0..6).prop_map(move |rules| {
            let atoms = (0..n).map(|i| format!("a{i}")).collect();
            Program::new(atoms, rules).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn random_programs_agree_with_wfs(p in random_program(5)) {
        let m = rw_minimum_model(&p).unwrap();
        prop_assert_eq!(collapse3(&m.values), wfs_oracle(&p));
        prop_assert_eq!(tp_step(&p, &m.values), m.values.clone());
    }

    #[test]
    fn random_programs_match_the_scan(p in random_program(3)) {
        let m = rw_minimum_model(&p).unwrap();
        prop_assert_eq!(Some(m.values), scan_minimum(&p, p.atoms().len() + 1));
    }

    #[test]
    fn random_programs_match_the_generic_solver(p in random_program(2)) {
        let rw = rw_minimum_model(&p).unwrap();
        for depth in 1..=2 {
            prop_assert!(verify_fp_weak_monotone(&p, depth).unwrap());
            prop_assert_eq!(generic_minimum_model(&p, depth).unwrap(), truncated(&rw.values, depth));
        }
    }
}

#[test]
fn three_valued_names() {
    let p = Program::parse("p :- not p.\nq.\nr :- not q.").unwrap();
    let got = wfs_oracle(&p);
    let named = by_name(&p, &rw_minimum_model(&p).unwrap().values);
    assert_eq!(named["p"], Zero);
    assert_eq!(got[p.atom_index("q").unwrap()], Truth3::True);
    assert_eq!(got[p.atom_index("r").unwrap()], Truth3::False);
}

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use stratlat::enumerate::{enumerate_lattices, enumerate_monotone_maps, enumerate_projections};
use stratlat::fixtures;
use stratlat::{projection_adjoint, Error, FiniteLattice, LatticeMap, PreservationWitness, Verdict};

fn raised() -> Arc<FiniteLattice> {
    Arc::new(fixtures::raised_diamond())
}

#[test]
fn chain_is_a_lattice() {
    let l = FiniteLattice::chain(&["a", "b", "c"]);
    assert_eq!(l.label(l.bottom()), "a");
    assert_eq!(l.label(l.top()), "c");
    for x in l.elements() {
        for y in l.elements() {
            assert_eq!(l.meet(x, y), x.min(y));
            assert_eq!(l.join(x, y), x.max(y));
        }
    }
}

#[test]
fn raised_diamond_validates() {
    let l = raised();
    assert_eq!(l.len(), 5);
    let i = |s: &str| l.index_of(s).unwrap();
    assert!(l.leq(i("bot"), i("1")));
    assert!(!l.leq(i("1"), i("2")) && !l.leq(i("2"), i("1")));
}

#[test]
fn missing_join_is_rejected() {
    let r = FiniteLattice::new(&["bot", "a", "b"], &[("bot", "a"), ("bot", "b")]);
    assert!(matches!(r, Err(Error::NotALattice(..)) | Err(Error::NoBound(_))), "{r:?}");
}

#[test]
fn cycles_are_rejected() {
    let r = FiniteLattice::new(&["a", "b"], &[("a", "b"), ("b", "a")]);
    assert!(matches!(r, Err(Error::Cycle(..))), "{r:?}");
}

#[test]
fn bounds_of_sets() {
    let l = raised();
    let i = |s: &str| l.index_of(s).unwrap();
    assert_eq!(l.join_all([]), l.bottom());
    assert_eq!(l.meet_all([]), l.top());
    let pair = [i("1"), i("2")];
    let ups: Vec<usize> = l.elements().filter(|&u| pair.iter().all(|&x| l.leq(x, u))).collect();
    let downs: Vec<usize> = l.elements().filter(|&u| pair.iter().all(|&x| l.leq(u, x))).collect();
    let sup = common::least(&ups, |a, b| l.leq(a, b)).unwrap();
    let inf = common::greatest(&downs, |a, b| l.leq(a, b)).unwrap();
    assert_eq!(l.join_all(pair), sup);
    assert_eq!(sup, i("top"));
    assert_eq!(l.meet_all(pair), inf);
    assert_eq!(inf, i("0"));
}

#[test]
fn identity_is_its_own_adjoint() {
    let l = raised();
    let pair = projection_adjoint(&LatticeMap::identity(l.clone())).unwrap();
    assert_eq!(pair.lower().table(), LatticeMap::identity(l).table());
    assert!(pair.is_projection_embedding());
}

#[test]
fn level_zero_restriction_is_a_projection() {
    let h = fixtures::collapsed_bottom_tower().projection(1, 0).clone();
    let pair = projection_adjoint(&h).unwrap();
    let k = pair.lower();
    let (low, high) = (h.target(), h.source());
    for y in low.elements() {
        let image = k.apply(y);
        let expected = match low.label(y) {
            "bot" => "bot",
            "a" => "1",
            "b" => "2",
            other => other,
        };
        assert_eq!(high.label(image), expected);
    }
    assert!(h.is_completely_additive().unwrap().holds());
}

#[test]
fn multiset_map_is_locally_but_not_completely_additive() {
    let h = fixtures::multiset_projection();
    assert!(projection_adjoint(&h).is_ok());
    assert!(h.is_locally_completely_additive().unwrap().holds());
    let src = h.source();
    let Verdict::Fails(PreservationWitness::Pair(x, y)) = h.is_completely_additive().unwrap() else {
        panic!("expected a pair witness");
    };
    let tgt = h.target();
    assert_ne!(h.apply(src.join(x, y)), tgt.join(h.apply(x), h.apply(y)));
    let aa = src.index_of("{a,a}").unwrap();
    let bb = src.index_of("{b,b}").unwrap();
    assert_eq!(src.label(src.join(aa, bb)), "top");
    assert_eq!(tgt.label(tgt.join(h.apply(aa), h.apply(bb))), "{a,b}");
}

#[test]
fn fiber_without_its_join_breaks_local_additivity() {
    let l = raised();
    let three = Arc::new(FiniteLattice::chain(&["lo", "mid", "hi"]));
    let found = enumerate_monotone_maps(&l, &three)
        .into_iter()
        .find(|h| {
            (0..3).any(|y| {
                let fiber: Vec<usize> = h.fiber(y).collect();
                !fiber.is_empty() && h.apply(l.join_all(fiber.iter().copied())) != y
            })
        })
        .expect("a monotone map whose fiber join escapes");
    let Verdict::Fails(y) = found.is_locally_completely_additive().unwrap() else {
        panic!("should fail");
    };
    let fiber: Vec<usize> = found.fiber(y).collect();
    assert_ne!(found.apply(l.join_all(fiber)), y);
}

#[test]
fn chain_projections_are_locally_additive() {
    for n in 1..=5 {
        for m in 1..=n {
            let a = Arc::new(FiniteLattice::chain(&(0..n).map(|i| i.to_string()).collect::<Vec<_>>()));
            let b = Arc::new(FiniteLattice::chain(&(0..m).map(|i| i.to_string()).collect::<Vec<_>>()));
            for h in enumerate_projections(&a, &b) {
                assert!(h.is_locally_completely_additive().unwrap().holds());
            }
        }
    }
}

#[test]
fn infima_preservation() {
    let l = raised();
    assert!(LatticeMap::identity(l).preserves_all_infima().unwrap().holds());
    let d = fixtures::multiset_projection().dual();
    assert!(!d.preserves_all_infima().unwrap().holds());
}

fn small_lattices() -> Vec<Arc<FiniteLattice>> {
    (1..=5).flat_map(|n| enumerate_lattices(n).unwrap()).map(Arc::new).collect()
}

#[test]
fn galois_pairs_preserve_their_bounds() {
    let ls = small_lattices();
    for a in &ls {
        for b in &ls {
            if b.len() > a.len() {
                continue;
            }
            for h in enumerate_projections(a, b) {
                assert!(h.preserves_all_infima().unwrap().holds());
                let pair = projection_adjoint(&h).unwrap();
                let k = pair.lower();
                assert_eq!(k.apply(b.bottom()), a.bottom());
                for x in b.elements() {
                    for y in b.elements() {
                        assert_eq!(k.apply(b.join(x, y)), a.join(k.apply(x), k.apply(y)));
                    }
                }
            }
        }
    }
}

#[test]
fn adjoint_exists_exactly_for_surjections_with_lower_adjoints() {
    let ls: Vec<_> = small_lattices().into_iter().filter(|l| l.len() <= 4).collect();
    for a in &ls {
        for b in &ls {
            for h in enumerate_monotone_maps(a, b) {
                let has_lower = b.elements().all(|x| {
                    let ups: Vec<usize> = a.elements().filter(|&y| b.leq(x, h.apply(y))).collect();
                    common::least(&ups, |p, q| a.leq(p, q)).is_some_and(|k| a.elements().all(|y| b.leq(x, h.apply(y)) == a.leq(k, y)))
                });
                assert_eq!(projection_adjoint(&h).is_ok(), h.is_surjective() && has_lower, "{h:?}");
            }
        }
    }
}

#[test]
fn composite_projection_has_composite_embedding() {
    let ls = small_lattices();
    let chains: Vec<_> = ls.iter().filter(|l| l.len() >= 3).take(6).cloned().collect();
    for a in &chains {
        for b in ls.iter().filter(|b| b.len() <= a.len()) {
            for c in ls.iter().filter(|c| c.len() <= b.len()) {
                for h1 in enumerate_projections(a, b).into_iter().take(4) {
                    for h2 in enumerate_projections(b, c).into_iter().take(4) {
                        let h = h1.then(&h2).unwrap();
                        let pair = projection_adjoint(&h).unwrap();
                        let k1 = projection_adjoint(&h1).unwrap().lower().clone();
                        let k2 = projection_adjoint(&h2).unwrap().lower().clone();
                        assert_eq!(pair.lower().table(), k2.then(&k1).unwrap().table());
                    }
                }
            }
        }
    }
}

#[test]
fn complete_additivity_implies_local() {
    let ls: Vec<_> = small_lattices().into_iter().filter(|l| l.len() <= 4).collect();
    for a in &ls {
        for b in &ls {
            for h in enumerate_monotone_maps(a, b) {
                if h.is_completely_additive().unwrap().holds() {
                    assert!(h.is_locally_completely_additive().unwrap().holds(), "{h:?}");
                }
            }
        }
    }
}

fn lattice_and_elements() -> impl Strategy<Value = (Arc<FiniteLattice>, usize, usize, usize)> {
    let ls: Vec<Arc<FiniteLattice>> = (1..=6).flat_map(|n| enumerate_lattices(n).unwrap()).map(Arc::new).collect();
    (0..ls.len()).prop_flat_map(move |i| {
        let l = ls[i].clone();
        let n = l.len();
        (Just(l), 0..n, 0..n, 0..n)
    })
}

proptest! {
    #[test]
    fn lattice_laws((l, x, y, z) in lattice_and_elements()) {
        prop_assert_eq!(l.join(x, y), l.join(y, x));
        prop_assert_eq!(l.meet(x, y), l.meet(y, x));
        prop_assert_eq!(l.join(x, l.join(y, z)), l.join(l.join(x, y), z));
        prop_assert_eq!(l.meet(x, l.meet(y, z)), l.meet(l.meet(x, y), z));
        prop_assert_eq!(l.join(x, l.meet(x, y)), x);
        prop_assert_eq!(l.meet(x, l.join(x, y)), x);
        prop_assert_eq!(l.leq(x, y), l.meet(x, y) == x);
        prop_assert_eq!(l.leq(x, y), l.join(x, y) == y);
        prop_assert!(l.leq(l.bottom(), x) && l.leq(x, l.top()));
    }

    #[test]
    fn duals_swap_bounds((l, x, y, _z) in lattice_and_elements()) {
        let d = l.dual();
        prop_assert_eq!(d.join(x, y), l.meet(x, y));
        prop_assert_eq!(d.leq(x, y), l.leq(y, x));
    }
}

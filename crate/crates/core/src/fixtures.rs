//! Small named structures used by tests, the acceptance suite and the CLI
//! fixture files.

use std::sync::Arc;

use crate::error::Result;
use crate::inverse::InverseSystem;
use crate::lattice::FiniteLattice;
use crate::lp::VModel;
use crate::maps::LatticeMap;
use crate::relation::Relation;
use crate::stratified::{PreorderSpec, StratifiedLattice};

fn arc(l: FiniteLattice) -> Arc<FiniteLattice> {
    Arc::new(l)
}

/// `⊥ < a, b < ⊤` with `a`, `b` incomparable.
pub fn diamond() -> FiniteLattice {
    FiniteLattice::new(
        &["bot", "a", "b", "top"],
        &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )
    .expect("diamond")
}

/// `⊥ < 0 < 1, 2 < ⊤` with `1`, `2` incomparable.
pub fn raised_diamond() -> FiniteLattice {
    FiniteLattice::new(
        &["bot", "0", "1", "2", "top"],
        &[("bot", "0"), ("0", "1"), ("0", "2"), ("1", "top"), ("2", "top")],
    )
    .expect("raised diamond")
}

/// The raised diamond with `⊥ =_0 0` and `⊥ ⊑_1 0`: a strong model whose
/// level-0 image is a diamond.
pub fn collapsed_bottom_model() -> StratifiedLattice {
    let l = arc(raised_diamond());
    let i = |s: &str| l.index_of(s).expect("label");
    StratifiedLattice::from_generators(
        l.clone(),
        &[
            PreorderSpec {
                pairs: vec![(i("0"), i("bot"))],
                include_leq: true,
            },
            PreorderSpec {
                pairs: vec![(i("bot"), i("0"))],
                include_leq: false,
            },
        ],
    )
    .expect("preorders")
}

/// The diamond with `⊥ =_0 b` and `⊥ ⊑_1 b`: a model that is not strong.
/// A4* fails at level 0 since `⊥ ∨ a = a` and `b ∨ a = ⊤` are apart, and
/// `a` has no greatest `⊑_0`-lower bound so A3d fails.
pub fn non_strong_diamond_model() -> StratifiedLattice {
    let l = arc(diamond());
    let i = |s: &str| l.index_of(s).expect("label");
    StratifiedLattice::from_generators(
        l.clone(),
        &[
            PreorderSpec {
                pairs: vec![(i("b"), i("bot"))],
                include_leq: true,
            },
            PreorderSpec {
                pairs: vec![(i("bot"), i("b"))],
                include_leq: false,
            },
        ],
    )
    .expect("preorders")
}

/// Sub-multisets of `{a,a,b,b}` with at most two elements, plus a top.
pub fn multisets() -> FiniteLattice {
    FiniteLattice::new(
        &["{}", "{a}", "{b}", "{a,a}", "{a,b}", "{b,b}", "top"],
        &[
            ("{}", "{a}"),
            ("{}", "{b}"),
            ("{a}", "{a,a}"),
            ("{a}", "{a,b}"),
            ("{b}", "{a,b}"),
            ("{b}", "{b,b}"),
            ("{a,a}", "top"),
            ("{a,b}", "top"),
            ("{b,b}", "top"),
        ],
    )
    .expect("multisets")
}

/// Subsets of `{a,b}` plus a top.
pub fn sets_with_top() -> FiniteLattice {
    FiniteLattice::new(
        &["{}", "{a}", "{b}", "{a,b}", "top"],
        &[
            ("{}", "{a}"),
            ("{}", "{b}"),
            ("{a}", "{a,b}"),
            ("{b}", "{a,b}"),
            ("{a,b}", "top"),
        ],
    )
    .expect("sets")
}

/// Forgets multiplicity: a projection whose fibers contain their joins but
/// which sends the join `top` of `{a,a}` and `{b,b}` to `top`, not `{a,b}`.
pub fn multiset_projection() -> LatticeMap {
    let source = arc(multisets());
    let target = arc(sets_with_top());
    LatticeMap::from_labels(
        source,
        target,
        &[
            ("{}", "{}"),
            ("{a}", "{a}"),
            ("{b}", "{b}"),
            ("{a,a}", "{a}"),
            ("{a,b}", "{a,b}"),
            ("{b,b}", "{b}"),
            ("top", "top"),
        ],
    )
    .expect("multiset projection")
}

pub fn multiset_tower() -> InverseSystem {
    let h = multiset_projection();
    InverseSystem::from_consecutive(vec![h.target().clone(), h.source().clone()], vec![h]).expect("tower")
}

/// Diamond under the raised diamond, collapsing `⊥` with `0`.
pub fn collapsed_bottom_tower() -> InverseSystem {
    let low = arc(diamond());
    let high = arc(raised_diamond());
    let h = LatticeMap::from_labels(
        high.clone(),
        low.clone(),
        &[("bot", "bot"), ("0", "bot"), ("1", "a"), ("2", "b"), ("top", "top")],
    )
    .expect("map");
    InverseSystem::from_consecutive(vec![low, high], vec![h]).expect("tower")
}

/// `F_0 < 0 < T_0` under `F_0 < F_1 < 0 < T_1 < T_0`, sending the three
/// middle values to `0`.
pub fn truth_chain_tower() -> InverseSystem {
    let low = arc(FiniteLattice::chain(&["F_0", "0", "T_0"]));
    let high = arc(FiniteLattice::chain(&["F_0", "F_1", "0", "T_1", "T_0"]));
    let h = LatticeMap::from_labels(
        high.clone(),
        low.clone(),
        &[("F_0", "F_0"), ("F_1", "0"), ("0", "0"), ("T_1", "0"), ("T_0", "T_0")],
    )
    .expect("map");
    InverseSystem::from_consecutive(vec![low, high], vec![h]).expect("tower")
}

/// A three-element chain under the raised diamond, sending `0, 1, 2` to the
/// middle. The middle fiber does not contain its join `⊤`.
pub fn non_additive_tower() -> InverseSystem {
    let low = arc(FiniteLattice::chain(&["lo", "mid", "hi"]));
    let high = arc(raised_diamond());
    let h = LatticeMap::from_labels(
        high.clone(),
        low.clone(),
        &[("bot", "lo"), ("0", "mid"), ("1", "mid"), ("2", "mid"), ("top", "hi")],
    )
    .expect("map");
    InverseSystem::from_consecutive(vec![low, high], vec![h]).expect("tower")
}

/// `∏ L_α` over `levels` with `x ⊑_α y` iff `x_α ≤ y_α` and `x_β = y_β`
/// for `β < α`.
pub fn product_model(levels: &[FiniteLattice]) -> Result<StratifiedLattice> {
    let sizes: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    let total: usize = sizes.iter().product();
    let tuples: Vec<Vec<usize>> = (0..total)
        .map(|mut i| {
            let mut t = vec![0; sizes.len()];
            for (slot, &k) in t.iter_mut().zip(&sizes).rev() {
                *slot = i % k;
                i /= k;
            }
            t
        })
        .collect();
    let labels: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(levels).map(|(&c, l)| l.label(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let leq = Relation::from_fn(total, |a, b| {
        tuples[a]
            .iter()
            .zip(&tuples[b])
            .zip(levels)
            .all(|((&x, &y), l)| l.leq(x, y))
    });
    let lattice = arc(FiniteLattice::from_relation(labels, &leq)?);
    let preorders = (0..levels.len())
        .map(|alpha| {
            Relation::from_fn(total, |a, b| {
                let (x, y) = (&tuples[a], &tuples[b]);
                levels[alpha].leq(x[alpha], y[alpha]) && x[..alpha] == y[..alpha]
            })
        })
        .collect();
    StratifiedLattice::new(lattice, preorders)
}

/// Two two-element chains.
pub fn product_of_chains() -> StratifiedLattice {
    let c = FiniteLattice::chain(&["0", "1"]);
    product_model(&[c.clone(), c]).expect("product")
}

/// The depth-2 truth-value model on the given atoms.
pub fn truth_model(atoms: &[&str]) -> Result<VModel> {
    let atoms: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    VModel::new(2, &atoms, 10_000)
}

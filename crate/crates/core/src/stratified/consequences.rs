//! Identities every model satisfies, stated through the restriction maps.
//! Each is checked over all argument tuples like the axioms, so a failure
//! comes with a witness that [`replay_consequence`] re-evaluates.

use std::fmt;

use super::axioms::Witness;
use super::StratifiedLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Consequence {
    /// `x =_α x|_α`, `x|_α ≤ x`, and `x|_α` is below its whole class.
    RestrictionIsClassMinimum,
    /// `x ⊑_α y` is unchanged by restricting either side to level `α`.
    PreorderIgnoresRestriction,
    /// `x =_α y` iff `x|_α =_α y` iff `x|_α =_α y|_α` iff `x|_α = y|_α`.
    EquivalenceIsEqualRestriction,
    /// For `α < β`: `x|_α =_α x|_β` and `x|_α ≤ x|_β`.
    RestrictionsIncrease,
    /// `(x|_α)|_β` is `x|_α` when `α ≤ β` and `x|_β` otherwise.
    RestrictionsCompose,
    /// `x` is a restriction at level `α` iff `x = x|_α`.
    ImageIsFixedSet,
    /// On the level-`α` image, `=_α` is equality.
    EquivalenceIsEqualityOnImage,
    /// `x ⊑_α y` gives `x|_α ≤ y|_α`.
    PreorderBoundsRestrictions,
    /// `x` is the join of its restrictions.
    JoinOfRestrictions,
    /// If `x|_α = z|_α = y` then `(x ∨ z)|_α = y`.
    CommonRestrictionSurvivesJoin,
    /// `x ≤ y` iff `x|_α ≤ y|_α` at every level.
    OrderIsLevelwise,
    /// `x|_α ≤ y` iff `x|_α ≤ y|_α`.
    RestrictionBelow,
    /// `x ⊑_α y` iff `x|_α ≤ y|_α` (or `x|_α ≤ y`) and `x =_β y` below `α`.
    PreorderFromRestrictions,
    /// `x|_α ⊑_α y|_α` iff `x|_α ≤ y|_α` and `x|_β =_β y|_β` below `α`.
    RestrictedPreorder,
    /// On the level-`α` image, `x ⊑_α y` iff `x ≤ y` and `x|_β = y|_β` below `α`.
    PreorderOnImage,
    /// Strong models only: `(x ∨ y)|_α = x|_α ∨ y|_α` and `⊥|_α = ⊥`.
    RestrictionPreservesJoins,
}

impl Consequence {
    pub const ALL: [Consequence; 16] = [
        Consequence::RestrictionIsClassMinimum,
        Consequence::PreorderIgnoresRestriction,
        Consequence::EquivalenceIsEqualRestriction,
        Consequence::RestrictionsIncrease,
        Consequence::RestrictionsCompose,
        Consequence::ImageIsFixedSet,
        Consequence::EquivalenceIsEqualityOnImage,
        Consequence::PreorderBoundsRestrictions,
        Consequence::JoinOfRestrictions,
        Consequence::CommonRestrictionSurvivesJoin,
        Consequence::OrderIsLevelwise,
        Consequence::RestrictionBelow,
        Consequence::PreorderFromRestrictions,
        Consequence::RestrictedPreorder,
        Consequence::PreorderOnImage,
        Consequence::RestrictionPreservesJoins,
    ];

    /// Every consequence except the one that needs a strong model.
    pub fn for_models() -> &'static [Consequence] {
        &Self::ALL[..15]
    }

    pub fn name(self) -> &'static str {
        use Consequence::*;
        match self {
            RestrictionIsClassMinimum => "restriction-is-class-minimum",
            PreorderIgnoresRestriction => "preorder-ignores-restriction",
            EquivalenceIsEqualRestriction => "equivalence-is-equal-restriction",
            RestrictionsIncrease => "restrictions-increase",
            RestrictionsCompose => "restrictions-compose",
            ImageIsFixedSet => "image-is-fixed-set",
            EquivalenceIsEqualityOnImage => "equivalence-is-equality-on-image",
            PreorderBoundsRestrictions => "preorder-bounds-restrictions",
            JoinOfRestrictions => "join-of-restrictions",
            CommonRestrictionSurvivesJoin => "common-restriction-survives-join",
            OrderIsLevelwise => "order-is-levelwise",
            RestrictionBelow => "restriction-below",
            PreorderFromRestrictions => "preorder-from-restrictions",
            RestrictedPreorder => "restricted-preorder",
            PreorderOnImage => "preorder-on-image",
            RestrictionPreservesJoins => "restriction-preserves-joins",
        }
    }

    fn shape(self) -> (usize, usize) {
        use Consequence::*;
        match self {
            RestrictionsIncrease | RestrictionsCompose => (2, 1),
            ImageIsFixedSet => (1, 1),
            JoinOfRestrictions => (0, 1),
            OrderIsLevelwise => (0, 2),
            CommonRestrictionSurvivesJoin => (1, 3),
            _ => (1, 2),
        }
    }
}

impl fmt::Display for Consequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceReport {
    pub consequence: Consequence,
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// Runs each check over all levels `0..=D` and all element tuples. The model
/// must have restrictions at every level.
pub fn check_consequences(s: &StratifiedLattice, which: &[Consequence]) -> Vec<ConsequenceReport> {
    which
        .iter()
        .map(|&c| {
            let witness = search(s, c);
            ConsequenceReport {
                consequence: c,
                holds: witness.is_none(),
                witness,
            }
        })
        .collect()
}

pub fn replay_consequence(s: &StratifiedLattice, c: Consequence, w: &Witness) -> bool {
    let (nl, ne) = c.shape();
    w.levels.len() == nl
        && w.elements.len() == ne
        && w.levels.iter().all(|&a| a <= s.depth())
        && w.elements.iter().all(|&x| x < s.len())
        && !holds_at(s, c, &w.levels, &w.elements)
}

fn search(s: &StratifiedLattice, c: Consequence) -> Option<Witness> {
    let (nl, ne) = c.shape();
    let mut levels = vec![0; nl];
    loop {
        let mut elements = vec![0; ne];
        loop {
            if !holds_at(s, c, &levels, &elements) {
                return Some(Witness { levels, elements });
            }
            if !advance(&mut elements, s.len()) {
                break;
            }
        }
        if !advance(&mut levels, s.depth() + 1) {
            return None;
        }
    }
}

fn advance(tuple: &mut [usize], base: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

fn holds_at(s: &StratifiedLattice, c: Consequence, levels: &[usize], e: &[usize]) -> bool {
    use Consequence::*;
    let l = s.lattice();
    let r = |x: usize, a: usize| s.res(x, a);
    let eq = |a: usize, x: usize, y: usize| s.eq_at(a, x, y);
    let in_image = |x: usize, a: usize| s.elements().any(|y| r(y, a) == x);
    let below_all = |a: usize, x: usize, y: usize| (0..a).all(|b| eq(b, x, y));
    match c {
        RestrictionIsClassMinimum => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            eq(a, x, r(x, a)) && l.leq(r(x, a), x) && (!eq(a, x, y) || l.leq(r(x, a), y))
        }
        PreorderIgnoresRestriction => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            let base = s.sq(a, x, y);
            base == s.sq(a, r(x, a), y) && base == s.sq(a, x, r(y, a)) && base == s.sq(a, r(x, a), r(y, a))
        }
        EquivalenceIsEqualRestriction => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            let base = eq(a, x, y);
            base == eq(a, r(x, a), y) && base == eq(a, r(x, a), r(y, a)) && base == (r(x, a) == r(y, a))
        }
        RestrictionsIncrease => {
            let (a, b, x) = (levels[0], levels[1], e[0]);
            a >= b || (eq(a, r(x, a), r(x, b)) && l.leq(r(x, a), r(x, b)))
        }
        RestrictionsCompose => {
            let (a, b, x) = (levels[0], levels[1], e[0]);
            let expected = if a <= b { r(x, a) } else { r(x, b) };
            r(r(x, a), b) == expected
        }
        ImageIsFixedSet => {
            let (a, x) = (levels[0], e[0]);
            in_image(x, a) == (r(x, a) == x)
        }
        EquivalenceIsEqualityOnImage => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            !(in_image(x, a) && in_image(y, a)) || eq(a, x, y) == (x == y)
        }
        PreorderBoundsRestrictions => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            !s.sq(a, x, y) || l.leq(r(x, a), r(y, a))
        }
        JoinOfRestrictions => {
            let x = e[0];
            l.join_all(s.levels().map(|a| r(x, a))) == x
        }
        CommonRestrictionSurvivesJoin => {
            let (a, x, z, y) = (levels[0], e[0], e[1], e[2]);
            !(r(x, a) == y && r(z, a) == y) || r(l.join(x, z), a) == y
        }
        OrderIsLevelwise => {
            let (x, y) = (e[0], e[1]);
            l.leq(x, y) == s.levels().all(|a| l.leq(r(x, a), r(y, a)))
        }
        RestrictionBelow => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            l.leq(r(x, a), y) == l.leq(r(x, a), r(y, a))
        }
        PreorderFromRestrictions => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            let base = s.sq(a, x, y);
            let prefix = below_all(a, x, y);
            base == (l.leq(r(x, a), r(y, a)) && prefix) && base == (l.leq(r(x, a), y) && prefix)
        }
        RestrictedPreorder => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            let (rx, ry) = (r(x, a), r(y, a));
            s.sq(a, rx, ry) == (l.leq(rx, ry) && (0..a).all(|b| eq(b, r(x, b), r(y, b))))
        }
        PreorderOnImage => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            !(in_image(x, a) && in_image(y, a))
                || s.sq(a, x, y) == (l.leq(r(x, a), r(y, a)) && (0..a).all(|b| r(x, b) == r(y, b)))
        }
        RestrictionPreservesJoins => {
            let (a, x, y) = (levels[0], e[0], e[1]);
            r(l.join(x, y), a) == l.join(r(x, a), r(y, a)) && r(l.bottom(), a) == l.bottom()
        }
    }
}

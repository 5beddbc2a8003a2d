use std::fmt;
use std::str::FromStr;

use super::StratifiedLattice;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
    A4Star,
    A5,
    A6,
    A3d,
    A4d,
    A4StarD,
    A5d,
    B1,
    B2,
    B2Star,
    B3,
    B4,
    D,
    C,
}

impl Axiom {
    pub const ALL: [Axiom; 18] = [
        Axiom::A1,
        Axiom::A2,
        Axiom::A3,
        Axiom::A4,
        Axiom::A4Star,
        Axiom::A5,
        Axiom::A6,
        Axiom::A3d,
        Axiom::A4d,
        Axiom::A4StarD,
        Axiom::A5d,
        Axiom::B1,
        Axiom::B2,
        Axiom::B2Star,
        Axiom::B3,
        Axiom::B4,
        Axiom::D,
        Axiom::C,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::A4 => "A4",
            Axiom::A4Star => "A4*",
            Axiom::A5 => "A5",
            Axiom::A6 => "A6",
            Axiom::A3d => "A3d",
            Axiom::A4d => "A4d",
            Axiom::A4StarD => "A4*d",
            Axiom::A5d => "A5d",
            Axiom::B1 => "B1",
            Axiom::B2 => "B2",
            Axiom::B2Star => "B2*",
            Axiom::B3 => "B3",
            Axiom::B4 => "B4",
            Axiom::D => "D",
            Axiom::C => "C",
        }
    }

    /// Number of level and element arguments of the violation predicate.
    fn shape(self) -> (usize, usize) {
        match self {
            Axiom::A1 => (2, 2),
            Axiom::A2 => (0, 2),
            Axiom::A3 | Axiom::A3d => (1, 1),
            Axiom::A4 | Axiom::A4d | Axiom::A5 | Axiom::A5d | Axiom::A6 => (1, 2),
            Axiom::A4Star | Axiom::A4StarD => (1, 3),
            Axiom::B1 => (2, 1),
            Axiom::B2 | Axiom::B2Star | Axiom::B4 | Axiom::D | Axiom::C => (1, 2),
            Axiom::B3 => (0, 1),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Input(format!("unknown axiom `{s}`")))
    }
}

/// Arguments at which an axiom's violation predicate is true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub levels: Vec<usize>,
    pub elements: Vec<usize>,
}

impl Witness {
    pub fn render(&self, s: &StratifiedLattice) -> String {
        const NAMES: [&str; 2] = ["α", "β"];
        let levels: Vec<String> = self
            .levels
            .iter()
            .zip(NAMES)
            .map(|(a, name)| format!("{name}={a}"))
            .collect();
        let elems: Vec<&str> = self.elements.iter().map(|&x| s.lattice().label(x)).collect();
        if levels.is_empty() {
            format!("({})", elems.join(", "))
        } else {
            format!("{}; ({})", levels.join(", "), elems.join(", "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn from_search(axiom: Axiom, witness: Option<Witness>) -> Self {
        AxiomReport {
            axiom,
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Model,
    Strong,
    Dual,
    Symmetric,
    B,
}

impl Suite {
    pub fn axioms(self) -> &'static [Axiom] {
        use Axiom::*;
        match self {
            Suite::Model => &[A1, A2, A3, A4, A5, A6],
            Suite::Strong => &[A1, A2, A3, A4, A4Star, A5, A6],
            Suite::Dual => &[A3d, A4d, A4StarD, A5d],
            Suite::Symmetric => &[A1, A2, A3, A4, A5, A6, A3d, A4d, A4StarD, A5d],
            Suite::B => &[B1, B2, B2Star, B3, B4, D, C],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "model" => Ok(Suite::Model),
            "strong" => Ok(Suite::Strong),
            "dual" => Ok(Suite::Dual),
            "symmetric" => Ok(Suite::Symmetric),
            "b" => Ok(Suite::B),
            _ => Err(Error::Input(format!("unknown suite `{s}`"))),
        }
    }
}

/// Evaluates each axiom exhaustively over levels `0..=D`. The witness is the
/// first violating argument tuple in lexicographic order.
pub fn check_axioms(s: &StratifiedLattice, axioms: &[Axiom]) -> Vec<AxiomReport> {
    axioms.iter().map(|&a| AxiomReport::from_search(a, search(s, a))).collect()
}

/// True when `w` still exhibits a violation of `axiom` in `s`.
pub fn replay(s: &StratifiedLattice, axiom: Axiom, w: &Witness) -> bool {
    let (nl, ne) = axiom.shape();
    w.levels.len() == nl
        && w.elements.len() == ne
        && w.levels.iter().all(|&a| a <= s.depth())
        && w.elements.iter().all(|&x| x < s.len())
        && violated(s, axiom, &w.levels, &w.elements)
}

fn search(s: &StratifiedLattice, axiom: Axiom) -> Option<Witness> {
    let (nl, ne) = axiom.shape();
    let levels = s.depth() + 1;
    let mut ls = vec![0; nl];
    loop {
        let mut es = vec![0; ne];
        loop {
            if violated(s, axiom, &ls, &es) {
                return Some(Witness {
                    levels: ls,
                    elements: es,
                });
            }
            if !advance(&mut es, s.len()) {
                break;
            }
        }
        if !advance(&mut ls, levels) {
            return None;
        }
    }
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn violated(s: &StratifiedLattice, axiom: Axiom, ls: &[usize], es: &[usize]) -> bool {
    let l = s.lattice();
    let r = |x: usize, a: usize| s.res(x, a);
    match axiom {
        Axiom::A1 => {
            let (a, b, x, y) = (ls[0], ls[1], es[0], es[1]);
            a < b && s.sq(b, x, y) && !s.eq_at(a, x, y)
        }
        Axiom::A2 => {
            let (x, y) = (es[0], es[1]);
            x != y && s.levels().all(|a| s.eq_at(a, x, y))
        }
        Axiom::A3 => {
            let (a, x) = (ls[0], es[0]);
            !s.elements().any(|y| {
                s.eq_at(a, x, y) && s.elements().all(|z| !s.sq(a, x, z) || l.leq(y, z))
            })
        }
        Axiom::A4 => {
            let (a, x, y) = (ls[0], es[0], es[1]);
            s.eq_at(a, x, y) && !s.eq_at(a, l.join(x, y), x)
        }
        Axiom::A4Star => {
            let (a, x, y, z) = (ls[0], es[0], es[1], es[2]);
            s.eq_at(a, x, y) && !s.eq_at(a, l.join(x, z), l.join(y, z))
        }
        Axiom::A5 | Axiom::B2 => {
            let (a, x, y) = (ls[0], es[0], es[1]);
            l.leq(x, y) && !l.leq(r(x, a), r(y, a))
        }
        Axiom::A6 => {
            let (a, x, y) = (ls[0], es[0], es[1]);
            l.leq(x, y) && s.prefix_eq(a, x, y) && !s.sq(a, x, y)
        }
        Axiom::A3d => s.corestriction(es[0], ls[0]).is_none(),
        Axiom::A4d => {
            let (a, x, y) = (ls[0], es[0], es[1]);
            s.eq_at(a, x, y) && !s.eq_at(a, l.meet(x, y), x)
        }
        Axiom::A4StarD => {
            let (a, x, y, z) = (ls[0], es[0], es[1], es[2]);
            s.eq_at(a, x, y) && !s.eq_at(a, l.meet(x, z), l.meet(y, z))
        }
        Axiom::A5d => {
            let (a, x, y) = (ls[0], es[0], es[1]);
            match (s.corestriction(x, a), s.corestriction(y, a)) {
                (Some(cx), Some(cy)) => l.leq(x, y) && !l.leq(cx, cy),
                _ => false,
            }
        }
        Axiom::B1 => {
            let (a, b, x) = (ls[0], ls[1], es[0]);
            b <= a && r(r(x, a), b) != r(x, b)
        }
        Axiom::B2Star => {
            let (a, x, y) = (ls[0], es[0], es[1]);
            let bottom_case = x == l.bottom() && y == l.bottom() && r(l.bottom(), a) != l.bottom();
            bottom_case || r(l.join(x, y), a) != l.join(r(x, a), r(y, a))
        }
        Axiom::B3 => {
            let x = es[0];
            x != l.join_all(s.levels().map(|a| r(x, a)))
        }
        Axiom::B4 => {
            let (a, x, y) = (ls[0], es[0], es[1]);
            r(x, a) == r(y, a) && r(l.join(x, y), a) != r(x, a)
        }
        Axiom::D => {
            let (a, x, y) = (ls[0], es[0], es[1]);
            reconstructed_sq(s, a, x, y) != s.sq(a, x, y)
        }
        Axiom::C => {
            let (a, x, z) = (ls[0], es[0], es[1]);
            let rx = r(x, a);
            let equivalent = reconstructed_sq(s, a, rx, x) && reconstructed_sq(s, a, x, rx);
            !equivalent || (reconstructed_sq(s, a, x, z) && !l.leq(rx, z))
        }
    }
}

/// `x|_α ≤ y|_α` and `x|_β = y|_β` for every `β < α`.
pub(crate) fn reconstructed_sq(s: &StratifiedLattice, alpha: usize, x: usize, y: usize) -> bool {
    s.lattice().leq(s.res(x, alpha), s.res(y, alpha)) && (0..alpha).all(|b| s.res(x, b) == s.res(y, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Classification {
    NotModel,
    Model,
    Strong,
    Symmetric,
    StrongSymmetric,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::NotModel => "not-model",
            Classification::Model => "model",
            Classification::Strong => "strong",
            Classification::Symmetric => "symmetric",
            Classification::StrongSymmetric => "strong-symmetric",
        }
    }

    pub fn is_model(self) -> bool {
        self != Classification::NotModel
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A model is strong when A4* holds and symmetric when its dual is a model,
/// i.e. when A3d, A4d and A5d hold. A result of `Strong` or `Symmetric`
/// alone means the two notions came apart, which should never happen.
pub fn classify(s: &StratifiedLattice) -> Classification {
    let holds = |a: Axiom| search(s, a).is_none();
    if !Suite::Model.axioms().iter().all(|&a| holds(a)) {
        return Classification::NotModel;
    }
    let strong = holds(Axiom::A4Star);
    let symmetric = [Axiom::A3d, Axiom::A4d, Axiom::A5d].into_iter().all(holds);
    match (strong, symmetric) {
        (true, true) => Classification::StrongSymmetric,
        (true, false) => Classification::Strong,
        (false, true) => Classification::Symmetric,
        (false, false) => Classification::Model,
    }
}

/// All model axioms hold.
pub fn is_model(s: &StratifiedLattice) -> bool {
    Suite::Model.axioms().iter().all(|&a| search(s, a).is_none())
}

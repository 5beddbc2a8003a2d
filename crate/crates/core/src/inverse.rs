//! Towers of lattices connected by projections, their limits, and the
//! decomposition of a model into its tower of restriction images.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::maps::{projection_adjoint, LatticeMap};
use crate::relation::Relation;
use crate::stratified::{check_axioms, classify, Axiom, Classification, StratifiedLattice};

/// A tower `L_0 ← L_1 ← … ← L_T` of projections with all composites and
/// their embeddings materialized.
#[derive(Debug, Clone)]
pub struct InverseSystem {
    tower: Vec<Arc<FiniteLattice>>,
    /// `projections[a][b]` is `h^a_b : L_a → L_b` for `b ≤ a`.
    projections: Vec<Vec<LatticeMap>>,
    /// `embeddings[a][b]` is `k^a_b : L_b → L_a` for `b ≤ a`.
    embeddings: Vec<Vec<LatticeMap>>,
}

/// A connecting map `L_from → L_to` with `to < from`.
#[derive(Debug, Clone)]
pub struct SystemMap {
    pub from: usize,
    pub to: usize,
    pub map: LatticeMap,
}

impl InverseSystem {
    /// `maps[i]` connects `L_{i+1}` to `L_i`.
    pub fn from_consecutive(tower: Vec<Arc<FiniteLattice>>, maps: Vec<LatticeMap>) -> Result<Self> {
        let family = maps
            .into_iter()
            .enumerate()
            .map(|(i, map)| SystemMap { from: i + 1, to: i, map })
            .collect();
        Self::new(tower, family)
    }

    /// Every consecutive map must be present; any further map is checked
    /// against the composite of consecutive ones.
    pub fn new(tower: Vec<Arc<FiniteLattice>>, family: Vec<SystemMap>) -> Result<Self> {
        if tower.is_empty() {
            return Err(Error::Input("empty tower".into()));
        }
        let t = tower.len() - 1;
        for m in &family {
            if m.to >= m.from || m.from > t {
                return Err(Error::Input(format!("map {}->{} does not go down the tower", m.from, m.to)));
            }
            if **m.map.source() != *tower[m.from] || **m.map.target() != *tower[m.to] {
                return Err(Error::MalformedMap);
            }
        }
        let mut consecutive = Vec::with_capacity(t);
        for i in 0..t {
            let m = family
                .iter()
                .find(|m| m.from == i + 1 && m.to == i)
                .ok_or_else(|| Error::Input(format!("missing map {}->{i}", i + 1)))?;
            if let Err(e) = projection_adjoint(&m.map) {
                return Err(at_level(e, i + 1, i));
            }
            consecutive.push(m.map.clone());
        }

        let mut projections: Vec<Vec<LatticeMap>> = Vec::with_capacity(t + 1);
        for (a, level) in tower.iter().enumerate().take(t + 1) {
            let mut row = vec![LatticeMap::identity(level.clone()); a + 1];
            for b in (0..a).rev() {
                row[b] = row[b + 1].then(&consecutive[b])?;
            }
            projections.push(row);
        }
        for m in &family {
            let derived = &projections[m.from][m.to];
            if let Some(x) = tower[m.from].elements().find(|&x| derived.apply(x) != m.map.apply(x)) {
                return Err(Error::NotCoherent {
                    from: m.from,
                    to: m.to,
                    witness: tower[m.from].label(x).to_string(),
                });
            }
        }
        let mut embeddings = Vec::with_capacity(t + 1);
        for (a, row) in projections.iter().enumerate() {
            let mut erow = Vec::with_capacity(a + 1);
            for (b, h) in row.iter().enumerate() {
                let pair = projection_adjoint(h).map_err(|e| at_level(e, a, b))?;
                erow.push(pair.lower().clone());
            }
            embeddings.push(erow);
        }
        Ok(InverseSystem {
            tower,
            projections,
            embeddings,
        })
    }

    pub fn tower(&self) -> &[Arc<FiniteLattice>] {
        &self.tower
    }

    /// Index of the top lattice.
    pub fn top_level(&self) -> usize {
        self.tower.len() - 1
    }

    /// `h^a_b`.
    pub fn projection(&self, a: usize, b: usize) -> &LatticeMap {
        &self.projections[a][b]
    }

    /// `k^a_b`.
    pub fn embedding(&self, a: usize, b: usize) -> &LatticeMap {
        &self.embeddings[a][b]
    }

    pub fn consecutive_maps(&self) -> Vec<&LatticeMap> {
        (1..self.tower.len()).map(|a| self.projection(a, a - 1)).collect()
    }

    /// Every `h^a_b` with `b < a`, as `(a, b, map)`.
    pub fn all_maps(&self) -> impl Iterator<Item = (usize, usize, &LatticeMap)> {
        (0..self.tower.len()).flat_map(move |a| (0..a).map(move |b| (a, b, self.projection(a, b))))
    }

    /// Removes top levels whose connecting map is a bijection. The limit
    /// stratification is unchanged up to isomorphism.
    pub fn strip_identity_tail(&self) -> InverseSystem {
        let mut top = self.top_level();
        while top > 0 && self.projection(top, top - 1).is_injective() {
            top -= 1;
        }
        let tower = self.tower[..=top].to_vec();
        let maps = (1..=top).map(|a| self.projection(a, a - 1).clone()).collect();
        InverseSystem::from_consecutive(tower, maps).expect("a prefix of a valid system is valid")
    }
}

fn at_level(e: Error, from: usize, to: usize) -> Error {
    match e {
        Error::NotProjection { law, witness } => Error::NotProjection {
            law,
            witness: format!("h[{from}->{to}] at {witness}"),
        },
        Error::NotMonotone(x, y) => Error::NotMonotone(format!("h[{from}->{to}] {x}"), y),
        other => other,
    }
}

/// The limit of a tower as a stratified lattice of depth `T + 1`, with
/// `x ⊑_α y ⇔ x_α ≤ y_α ∧ ∀β<α x_β = y_β`.
#[derive(Debug, Clone)]
pub struct LimitModel {
    pub system: InverseSystem,
    /// Component indices of each limit element.
    pub tuples: Vec<Vec<usize>>,
    pub model: Arc<StratifiedLattice>,
    /// `h^∞_α`.
    pub projections: Vec<LatticeMap>,
    /// `k^∞_α`.
    pub embeddings: Vec<LatticeMap>,
}

impl LimitModel {
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples.iter().position(|t| t == tuple)
    }
}

/// Compatible tuples are found by descending through the fibers of each
/// consecutive map, starting from `L_0`.
pub fn build_limit(sys: &InverseSystem) -> Result<LimitModel> {
    let t = sys.top_level();
    let mut tuples = Vec::new();
    let mut stack: Vec<Vec<usize>> = sys.tower[0].elements().map(|x| vec![x]).collect();
    stack.reverse();
    while let Some(prefix) = stack.pop() {
        let a = prefix.len();
        if a == t + 1 {
            tuples.push(prefix);
            continue;
        }
        let h = sys.projection(a, a - 1);
        let last = prefix[a - 1];
        let mut next: Vec<Vec<usize>> = h
            .fiber(last)
            .map(|x| {
                let mut p = prefix.clone();
                p.push(x);
                p
            })
            .collect();
        next.reverse();
        stack.extend(next);
    }
    let n = tuples.len();
    let labels = tuples
        .iter()
        .map(|tup| {
            let parts: Vec<&str> = tup.iter().enumerate().map(|(a, &x)| sys.tower[a].label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let leq = Relation::from_fn(n, |i, j| {
        tuples[i]
            .iter()
            .zip(&tuples[j])
            .enumerate()
            .all(|(a, (&x, &y))| sys.tower[a].leq(x, y))
    });
    let lattice = Arc::new(FiniteLattice::from_relation(labels, &leq)?);
    let preorders = (0..=t)
        .map(|alpha| {
            Relation::from_fn(n, |i, j| {
                sys.tower[alpha].leq(tuples[i][alpha], tuples[j][alpha])
                    && (0..alpha).all(|b| tuples[i][b] == tuples[j][b])
            })
        })
        .collect();
    let model = Arc::new(StratifiedLattice::new(lattice.clone(), preorders)?);

    let position = |tup: &[usize]| tuples.iter().position(|u| u == tup);
    let mut projections = Vec::with_capacity(t + 1);
    let mut embeddings = Vec::with_capacity(t + 1);
    #[allow(clippy::needless_range_loop)]
    for alpha in 0..=t {
        projections.push(LatticeMap::from_fn(lattice.clone(), sys.tower[alpha].clone(), |i| {
            tuples[i][alpha]
        })?);
        let mut table = Vec::with_capacity(sys.tower[alpha].len());
        for x in sys.tower[alpha].elements() {
            let tup: Vec<usize> = (0..=t)
                .map(|b| {
                    if b < alpha {
                        sys.projection(alpha, b).apply(x)
                    } else {
                        sys.embedding(b, alpha).apply(x)
                    }
                })
                .collect();
            table.push(position(&tup).ok_or_else(|| {
                Error::Internal(format!("embedding of {} is not compatible", sys.tower[alpha].label(x)))
            })?);
        }
        embeddings.push(LatticeMap::new(sys.tower[alpha].clone(), lattice.clone(), table)?);
    }
    Ok(LimitModel {
        system: sys.clone(),
        tuples,
        model,
        projections,
        embeddings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitClass {
    Neither,
    Model,
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapAdditivity {
    pub from: usize,
    pub to: usize,
    pub locally_completely_additive: bool,
    pub completely_additive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitClassification {
    /// Prediction from the additivity of the tower maps.
    pub predicted: LimitClass,
    pub maps: Vec<MapAdditivity>,
    /// What the axiom checkers report on the built limit.
    pub observed: Classification,
    pub a4_star_holds: bool,
}

impl LimitClassification {
    pub fn observed_class(&self) -> LimitClass {
        match (self.observed.is_model(), self.a4_star_holds) {
            (false, _) => LimitClass::Neither,
            (true, false) => LimitClass::Model,
            (true, true) => LimitClass::Strong,
        }
    }

    /// Prediction and observation coincide.
    pub fn agrees(&self) -> bool {
        self.predicted == self.observed_class()
    }
}

/// Predicts the class of the limit from the additivity of every `h^a_b` and
/// runs the axiom checkers on the built limit.
pub fn classify_limit(sys: &InverseSystem) -> Result<LimitClassification> {
    let mut maps = Vec::new();
    for (a, b, h) in sys.all_maps() {
        maps.push(MapAdditivity {
            from: a,
            to: b,
            locally_completely_additive: h.is_locally_completely_additive()?.holds(),
            completely_additive: h.is_completely_additive()?.holds(),
        });
    }
    let predicted = if maps.iter().all(|m| m.completely_additive) {
        LimitClass::Strong
    } else if maps.iter().all(|m| m.locally_completely_additive) {
        LimitClass::Model
    } else {
        LimitClass::Neither
    };
    let limit = build_limit(sys)?;
    let observed = classify(&limit.model);
    let a4_star_holds = check_axioms(&limit.model, &[Axiom::A4Star])[0].holds;
    Ok(LimitClassification {
        predicted,
        maps,
        observed,
        a4_star_holds,
    })
}

/// A model split into the tower of its restriction images `L|_0, …, L|_D`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub system: InverseSystem,
    /// For each level, the model elements forming `L|_α`, in tower index order.
    pub members: Vec<Vec<usize>>,
}

pub fn decompose(m: &StratifiedLattice) -> Result<Decomposition> {
    if !classify(m).is_model() {
        let failing = check_axioms(m, crate::stratified::Suite::Model.axioms())
            .into_iter()
            .find(|r| !r.holds)
            .expect("a non-model fails some axiom");
        return Err(Error::NotAModel {
            axiom: failing.axiom.name(),
            witness: failing.witness.map(|w| w.render(m)).unwrap_or_default(),
        });
    }
    let l = m.lattice();
    let d = m.depth();
    let members: Vec<Vec<usize>> = (0..=d).map(|a| m.level_set(a)).collect();
    let mut tower = Vec::with_capacity(d + 1);
    for (a, mem) in members.iter().enumerate() {
        let sub = l.induced(mem)?;
        for (i, &x) in mem.iter().enumerate() {
            for (j, &y) in mem.iter().enumerate() {
                let expected = m.res(l.join(x, y), a);
                if mem[sub.join(i, j)] != expected {
                    return Err(Error::Internal(format!(
                        "join of {} and {} in L|_{a} is not the restricted join",
                        l.label(x),
                        l.label(y)
                    )));
                }
            }
        }
        tower.push(Arc::new(sub));
    }
    let mut maps = Vec::with_capacity(d);
    for a in 1..=d {
        let pos = |x: usize| members[a - 1].iter().position(|&y| y == x);
        let table = members[a]
            .iter()
            .map(|&x| pos(m.res(x, a - 1)).ok_or(Error::MalformedMap))
            .collect::<Result<Vec<_>>>()?;
        maps.push(LatticeMap::new(tower[a].clone(), tower[a - 1].clone(), table)?);
    }
    let system = InverseSystem::from_consecutive(tower, maps)?;
    Ok(Decomposition { system, members })
}

/// A verified isomorphism from a model to the limit of its decomposition.
#[derive(Debug, Clone)]
pub struct Representation {
    pub decomposition: Decomposition,
    pub limit: LimitModel,
    /// `iso[x]` is the limit element `(x|_0, …, x|_D)`.
    pub iso: Vec<usize>,
}

pub fn representation_isomorphism(m: &StratifiedLattice) -> Result<Representation> {
    let decomposition = decompose(m)?;
    let limit = build_limit(&decomposition.system)?;
    let l = m.lattice();
    let d = m.depth();
    let fail = |msg: String| Error::IsoFailure(msg);

    let mut iso = Vec::with_capacity(m.len());
    for x in m.elements() {
        let tup: Vec<usize> = (0..=d)
            .map(|a| {
                decomposition.members[a]
                    .iter()
                    .position(|&y| y == m.res(x, a))
                    .expect("restrictions lie in the level set")
            })
            .collect();
        iso.push(
            limit
                .index_of(&tup)
                .ok_or_else(|| fail(format!("{} maps to an incompatible tuple", l.label(x))))?,
        );
    }
    let mut hit = vec![false; limit.tuples.len()];
    for &i in &iso {
        hit[i] = true;
    }
    if let Some(i) = hit.iter().position(|h| !h) {
        return Err(fail(format!("limit element {} has no preimage", limit.model.lattice().label(i))));
    }
    if iso.len() != limit.tuples.len() {
        return Err(fail("cardinalities differ".into()));
    }
    let target = &limit.model;
    for x in m.elements() {
        for y in m.elements() {
            if l.leq(x, y) != target.lattice().leq(iso[x], iso[y]) {
                return Err(fail(format!("order differs at ({}, {})", l.label(x), l.label(y))));
            }
            for a in 0..=target.depth() {
                if m.sq(a, x, y) != target.sq(a, iso[x], iso[y]) {
                    return Err(fail(format!("⊑_{a} differs at ({}, {})", l.label(x), l.label(y))));
                }
            }
        }
    }
    if check_axioms(m, &[Axiom::A4Star])[0].holds {
        for (a, b, h) in decomposition.system.all_maps() {
            if !h.is_completely_additive()?.holds() {
                return Err(fail(format!("strong model but h[{a}->{b}] is not completely additive")));
            }
        }
    }
    Ok(Representation {
        decomposition,
        limit,
        iso,
    })
}

/// Level-wise lattice isomorphisms commuting with the connecting maps.
pub fn tower_isomorphism(a: &InverseSystem, b: &InverseSystem) -> Option<Vec<Vec<usize>>> {
    if a.tower.len() != b.tower.len() {
        return None;
    }
    fn extend(a: &InverseSystem, b: &InverseSystem, acc: &mut Vec<Vec<usize>>) -> bool {
        let level = acc.len();
        if level == a.tower.len() {
            return true;
        }
        for phi in a.tower[level].isomorphisms(&b.tower[level]) {
            let commutes = level == 0 || {
                let (ha, hb, prev) = (a.projection(level, level - 1), b.projection(level, level - 1), &acc[level - 1]);
                a.tower[level].elements().all(|x| prev[ha.apply(x)] == hb.apply(phi[x]))
            };
            if commutes {
                acc.push(phi);
                if extend(a, b, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    extend(a, b, &mut acc).then_some(acc)
}

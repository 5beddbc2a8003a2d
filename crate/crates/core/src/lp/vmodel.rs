//! Materialized truncations of the truth-value model `V^Z`.

use std::sync::Arc;

use super::truth::TruthValue;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::relation::Relation;
use crate::stratified::StratifiedLattice;

/// `V_D^Z` as a stratified lattice, with the interpretation behind each element.
#[derive(Debug, Clone)]
pub struct VModel {
    pub depth: usize,
    pub atoms: Vec<String>,
    pub points: Vec<Vec<TruthValue>>,
    pub model: Arc<StratifiedLattice>,
}

/// `x ⊑_α y` on single values: equal, or both among `F_γ, T_γ (γ ≥ α)` and `0`
/// with `T_α` only below itself and `F_α` only above itself.
pub fn value_sq(alpha: usize, x: TruthValue, y: TruthValue) -> bool {
    if x == y {
        return true;
    }
    let deep = |v: TruthValue| v.level().is_none_or(|g| g >= alpha);
    deep(x) && deep(y) && x != TruthValue::T(alpha) && y != TruthValue::F(alpha)
}

impl VModel {
    /// Builds `V_D^Z` with `D ≥ 1`. States grow as `(2D+1)^|Z|`, so `limit`
    /// caps the element count.
    pub fn new(depth: usize, atoms: &[String], limit: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Input("V-model depth must be at least 1".into()));
        }
        let chain = TruthValue::chain(depth);
        let k = chain.len();
        let size = k
            .checked_pow(atoms.len() as u32)
            .filter(|&s| s <= limit)
            .ok_or_else(|| {
                Error::StateSpaceTooLarge(format!("{k}^{} interpretations exceed {limit}", atoms.len()))
            })?;
        let points: Vec<Vec<TruthValue>> = (0..size)
            .map(|mut i| {
                let mut p = vec![TruthValue::Zero; atoms.len()];
                for slot in p.iter_mut().rev() {
                    *slot = chain[i % k];
                    i /= k;
                }
                p
            })
            .collect();
        let labels = points.iter().map(|p| render(atoms, p)).collect();
        let leq = Relation::from_fn(size, |a, b| points[a].iter().zip(&points[b]).all(|(x, y)| x <= y));
        let lattice = Arc::new(FiniteLattice::from_relation(labels, &leq)?);
        let preorders = (0..depth)
            .map(|alpha| {
                Relation::from_fn(size, |a, b| {
                    points[a].iter().zip(&points[b]).all(|(&x, &y)| value_sq(alpha, x, y))
                })
            })
            .collect();
        let model = Arc::new(StratifiedLattice::new(lattice, preorders)?);
        Ok(VModel {
            depth,
            atoms: atoms.to_vec(),
            points,
            model,
        })
    }

    /// Index of an interpretation; values must lie in the depth-`D` chain.
    pub fn index_of(&self, point: &[TruthValue]) -> usize {
        let k = 2 * self.depth + 1;
        point.iter().fold(0, |acc, v| acc * k + v.rank(self.depth))
    }

    pub fn point(&self, index: usize) -> &[TruthValue] {
        &self.points[index]
    }
}

fn render(atoms: &[String], p: &[TruthValue]) -> String {
    if atoms.len() == 1 {
        return p[0].to_string();
    }
    let parts: Vec<String> = atoms.iter().zip(p).map(|(a, v)| format!("{a}={v}")).collect();
    parts.join(",")
}

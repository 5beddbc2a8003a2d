//! The program operator on `V^Z` and its least fixed point under `⊑`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::program::Program;
use super::truth::{Truth3, TruthValue};
use super::vmodel::{value_sq, VModel};
use crate::error::{Error, Result};
use crate::fixpoint::EndoFunction;

/// A total map from atoms (by index) to truth values.
pub type Interpretation = Vec<TruthValue>;

/// Interpretations above this many atoms are not materialized.
pub const MATERIALIZE_MAX_ATOMS: usize = 2;
pub const MATERIALIZE_MAX_DEPTH: usize = 2;

/// What happened at one level of the solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTrace {
    pub level: usize,
    /// Successive interpretations, starting at the bottom of the level slice.
    pub iterates: Vec<Interpretation>,
    /// Atoms whose value was fixed at this level.
    pub frozen: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimumModel {
    pub values: Interpretation,
    pub levels: Vec<LevelTrace>,
    /// Atoms left at `0` when a level froze nothing.
    pub undefined: Vec<usize>,
}

impl MinimumModel {
    /// The level at which `atom` froze, if it did.
    pub fn freeze_level(&self, atom: usize) -> Option<usize> {
        self.levels.iter().find(|t| t.frozen.contains(&atom)).map(|t| t.level)
    }

    pub fn collapsed(&self) -> Vec<Truth3> {
        collapse3(&self.values)
    }
}

/// One application of the program operator: `¬` sends `F_α` to `T_{α+1}` and
/// `T_α` to `F_{α+1}`, bodies take minima (empty body `T_0`), heads take
/// maxima over their rules (no rule `F_0`).
pub fn tp_step(program: &Program, interp: &[TruthValue]) -> Interpretation {
    let mut out = vec![TruthValue::BOTTOM; program.atoms().len()];
    for rule in program.rules() {
        let body = rule
            .body
            .iter()
            .map(|l| {
                let v = interp[l.atom];
                if l.positive {
                    v
                } else {
                    v.negate()
                }
            })
            .min()
            .unwrap_or(TruthValue::TOP);
        out[rule.head] = out[rule.head].max(body);
    }
    out
}

/// `v|_α` in `V`: values of level at most `α` are kept, the rest become
/// `F_{α+1}`.
pub fn restrict_value(v: TruthValue, alpha: usize) -> TruthValue {
    match v.level() {
        Some(g) if g <= alpha => v,
        _ => TruthValue::F(alpha + 1),
    }
}

/// `I ⊑ J`: equal, or `I ⊑_α J` at the first level where they are not `=_α`.
pub fn interp_lex_leq(a: &[TruthValue], b: &[TruthValue]) -> bool {
    if a == b {
        return true;
    }
    let top = a
        .iter()
        .chain(b)
        .filter_map(|v| v.level())
        .max()
        .unwrap_or(0);
    let sq = |alpha: usize, x: &[TruthValue], y: &[TruthValue]| {
        x.iter().zip(y).all(|(&u, &v)| value_sq(alpha, u, v))
    };
    for alpha in 0..=top + 1 {
        let up = sq(alpha, a, b);
        let down = sq(alpha, b, a);
        if !(up && down) {
            return up;
        }
    }
    unreachable!("distinct interpretations separate by level {}", top + 1)
}

const SAMPLES: usize = 512;

/// Level-by-level least fixed point of the program operator. At level `α`
/// the unfrozen atoms range over `F_α < F_{α+1} < T_α`; atoms landing on
/// `F_α` or `T_α` freeze, and a level that freezes nothing sends the rest
/// to `0`.
pub fn rw_minimum_model(program: &Program) -> Result<MinimumModel> {
    let n = program.atoms().len();
    let mut frozen = vec![false; n];
    let mut values: Interpretation = vec![TruthValue::BOTTOM; n];
    let mut levels = Vec::new();
    let mut undefined = Vec::new();
    let mut alpha = 0;
    while frozen.iter().any(|f| !f) {
        if alpha > n {
            return Err(Error::DepthCapExceeded(n + 1));
        }
        let in_slice = |u: &[TruthValue], frozen_values: &[TruthValue]| {
            (0..n).all(|i| {
                if frozen[i] {
                    u[i] == frozen_values[i]
                } else {
                    [TruthValue::F(alpha), TruthValue::F(alpha + 1), TruthValue::T(alpha)].contains(&u[i])
                }
            })
        };
        let mut u: Interpretation = (0..n)
            .map(|i| if frozen[i] { values[i] } else { TruthValue::F(alpha) })
            .collect();
        let mut iterates = vec![u.clone()];
        loop {
            let next: Interpretation = tp_step(program, &u)
                .into_iter()
                .map(|v| restrict_value(v, alpha))
                .collect();
            if !in_slice(&next, &values) || !next.iter().zip(&u).all(|(a, b)| a >= b) {
                return Err(Error::Internal(format!("level {alpha}: operator left the ascending slice")));
            }
            if next == u {
                break;
            }
            if iterates.len() > 2 * n + 1 {
                return Err(Error::Internal(format!("level {alpha}: iteration did not converge")));
            }
            u = next;
            iterates.push(u.clone());
        }
        let newly: Vec<usize> = (0..n)
            .filter(|&i| !frozen[i] && (u[i] == TruthValue::F(alpha) || u[i] == TruthValue::T(alpha)))
            .collect();
        for &i in &newly {
            frozen[i] = true;
            values[i] = u[i];
        }
        let stuck = newly.is_empty();
        levels.push(LevelTrace {
            level: alpha,
            iterates,
            frozen: newly,
        });
        if stuck {
            for i in 0..n {
                if !frozen[i] {
                    frozen[i] = true;
                    values[i] = TruthValue::Zero;
                    undefined.push(i);
                }
            }
        }
        alpha += 1;
    }
    let model = MinimumModel {
        values,
        levels,
        undefined,
    };
    verify_minimum(program, &model)?;
    Ok(model)
}

/// The result must be fixed by the operator and `⊑`-below every sampled
/// pre-fixed interpretation.
fn verify_minimum(program: &Program, model: &MinimumModel) -> Result<()> {
    let values = &model.values;
    if tp_step(program, values) != *values {
        return Err(Error::Internal("minimum model is not a fixed point".into()));
    }
    let n = values.len();
    if n == 0 {
        return Ok(());
    }
    let chain = TruthValue::chain(model.levels.len() + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..SAMPLES {
        let j: Interpretation = (0..n).map(|_| chain[rng.gen_range(0..chain.len())]).collect();
        if interp_lex_leq(&tp_step(program, &j), &j) && !interp_lex_leq(values, &j) {
            let shown: Vec<String> = j.iter().map(|v| v.to_string()).collect();
            return Err(Error::Internal(format!(
                "minimum model is not below the pre-fixed point [{}]",
                shown.join(", ")
            )));
        }
    }
    Ok(())
}

pub fn collapse3(values: &[TruthValue]) -> Vec<Truth3> {
    values.iter().map(|v| v.collapse()).collect()
}

fn check_materializable(program: &Program, depth: usize) -> Result<()> {
    let n = program.atoms().len();
    if n > MATERIALIZE_MAX_ATOMS || depth > MATERIALIZE_MAX_DEPTH {
        return Err(Error::StateSpaceTooLarge(format!(
            "{n} atoms at depth {depth}; at most {MATERIALIZE_MAX_ATOMS} atoms and depth {MATERIALIZE_MAX_DEPTH}"
        )));
    }
    Ok(())
}

/// The depth-`D` truncation of the program operator as a table on `V_D^Z`.
pub fn program_function(program: &Program, depth: usize) -> Result<(VModel, EndoFunction)> {
    check_materializable(program, depth)?;
    let v = VModel::new(depth, program.atoms(), usize::MAX)?;
    let f = EndoFunction::from_fn(v.model.clone(), |i| {
        let next: Interpretation = tp_step(program, v.point(i))
            .into_iter()
            .map(|x| x.truncate(depth))
            .collect();
        v.index_of(&next)
    })?;
    Ok((v, f))
}

/// Whether the truncated program operator preserves every `⊑_α`.
pub fn verify_fp_weak_monotone(program: &Program, depth: usize) -> Result<bool> {
    let (_, f) = program_function(program, depth)?;
    Ok(f.is_weakly_monotone())
}

/// The least fixed point computed by the general level-wise construction on
/// the materialized `V_D^Z`.
pub fn generic_minimum_model(program: &Program, depth: usize) -> Result<Interpretation> {
    let (v, f) = program_function(program, depth)?;
    let y = f.stratified_lfp()?;
    Ok(v.point(y).to_vec())
}

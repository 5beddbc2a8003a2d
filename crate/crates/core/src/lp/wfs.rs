//! Well-founded model by the alternating fixpoint. Works on plain atom sets
//! and shares nothing with the truth-value solver, so the two can check each
//! other.

use super::program::Program;
use super::truth::Truth3;

/// Least model of the reduct: rules whose negative literals all name atoms
/// outside `assumed`, with those literals dropped.
fn reduct_least_model(program: &Program, assumed: &[bool]) -> Vec<bool> {
    let mut model = vec![false; program.atoms().len()];
    let rules: Vec<_> = program
        .rules()
        .iter()
        .filter(|r| r.body.iter().all(|l| l.positive || !assumed[l.atom]))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for r in &rules {
            if !model[r.head] && r.body.iter().all(|l| !l.positive || model[l.atom]) {
                model[r.head] = true;
                changed = true;
            }
        }
    }
    model
}

pub fn wfs_oracle(program: &Program) -> Vec<Truth3> {
    let n = program.atoms().len();
    let mut truths = vec![false; n];
    loop {
        let possible = reduct_least_model(program, &truths);
        let next = reduct_least_model(program, &possible);
        if next == truths {
            return (0..n)
                .map(|i| match (truths[i], possible[i]) {
                    (true, _) => Truth3::True,
                    (false, true) => Truth3::Undef,
                    (false, false) => Truth3::False,
                })
                .collect();
        }
        truths = next;
    }
}

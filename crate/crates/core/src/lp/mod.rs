//! Infinite-valued semantics for propositional normal logic programs.

mod program;
mod semantics;
mod truth;
mod vmodel;
mod wfs;

pub use program::{Literal, Program, Rule};
pub use semantics::{
    collapse3, generic_minimum_model, interp_lex_leq, program_function, restrict_value, rw_minimum_model,
    tp_step, verify_fp_weak_monotone, Interpretation, LevelTrace, MinimumModel, MATERIALIZE_MAX_ATOMS,
    MATERIALIZE_MAX_DEPTH,
};
pub use truth::{Truth3, TruthValue};
pub use vmodel::{value_sq, VModel};
pub use wfs::wfs_oracle;

//! Finite stratified complete lattices: axiom checking, inverse-limit
//! representation, stratified fixed points, and an infinite-valued semantics
//! for normal logic programs.

pub mod enumerate;
pub mod error;
pub mod fixpoint;
pub mod fixtures;
pub mod io;
pub mod inverse;
pub mod lattice;
pub mod lp;
pub mod maps;
pub mod relation;
pub mod stratified;

pub use error::{Error, Result};
pub use lattice::{FiniteLattice, Verdict};
pub use maps::{projection_adjoint, GaloisPair, LatticeMap, PreservationWitness};
pub use relation::Relation;
pub use stratified::{Classification, StratifiedLattice};

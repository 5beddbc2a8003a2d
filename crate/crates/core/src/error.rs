use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),

    #[error("not a lattice: `{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),

    #[error("not a lattice: {0}")]
    NoBound(&'static str),

    #[error("map table is not total or refers to elements outside its target")]
    MalformedMap,

    #[error("map is not monotone: `{0}` <= `{1}` but their images are not ordered")]
    NotMonotone(String, String),

    #[error("map is not a projection: {law} fails at `{witness}`")]
    NotProjection { law: &'static str, witness: String },

    #[error("preorder {0} is not reflexive and transitive")]
    NotAPreorder(usize),

    #[error("not a model: {axiom} fails ({witness})")]
    NotAModel { axiom: &'static str, witness: String },

    #[error("A3d fails at level {level} for `{element}`: no greatest element below it")]
    A3dFails { level: usize, element: String },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("inverse system is not coherent: h[{from}->{to}] differs from the composite at `{witness}`")]
    NotCoherent {
        from: usize,
        to: usize,
        witness: String,
    },

    #[error("representation isomorphism failed: {0}")]
    IsoFailure(String),

    #[error("function is not weakly monotone: `{x}` below `{y}` at level {level} but images are not")]
    NotWeaklyMonotone { level: usize, x: String, y: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("level construction exceeded its depth cap of {0}")]
    DepthCapExceeded(usize),

    #[error("state space too large: {0}")]
    StateSpaceTooLarge(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

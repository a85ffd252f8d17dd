use thiserror::Error;

/// Which lattice operation a [`Error::NotALattice`] witness failed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Join,
    Meet,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundKind::Join => "join",
            BoundKind::Meet => "meet",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation is not a partial order: {a} and {b} lie on a cycle")]
    NotAPartialOrder { a: usize, b: usize },

    #[error("not a lattice: elements {x} and {y} have no unique {kind}")]
    NotALattice { x: usize, y: usize, kind: BoundKind },

    #[error("a lattice needs at least one element")]
    EmptyCarrier,

    #[error("element index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("duplicate element name {0:?}")]
    DuplicateName(String),

    #[error("unknown element name {0:?}")]
    UnknownName(String),

    #[error("size {size} exceeds the search bound {bound}")]
    SizeGuard { size: usize, bound: usize },

    #[error("requested size {requested} exceeds the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("lattice is not distributive (witness {x}, {y}, {z})")]
    NotDistributive { x: usize, y: usize, z: usize },

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("congruences live on carriers of different sizes ({left} vs {right})")]
    CarrierMismatch { left: usize, right: usize },

    #[error("partition is not compatible with join and meet at {x} ~ {y} (translate by {z})")]
    NotACongruence { x: usize, y: usize, z: usize },

    #[error("map is not a homomorphism at the pair ({x}, {y})")]
    NotAHomomorphism { x: usize, y: usize },

    #[error("unbound variable {0:?}")]
    UnboundVariable(String),

    #[error("identity uses {count} variables, at most {max} supported")]
    TooManyVariables { count: usize, max: usize },

    #[error("probe lattice #{probe} is outside the variety (assignment {assignment:?})")]
    ProbeOutsideVariety { probe: usize, assignment: Vec<usize> },

    #[error("set is not convex: {low} <= {middle} <= {high} with {middle} outside")]
    NotConvex { low: usize, middle: usize, high: usize },

    #[error("search budget of {0} steps exceeded")]
    BudgetExceeded(usize),

    #[error("gadget ({p}; {q}, {r}) matches none of the known shapes")]
    UnclassifiableGadget { p: usize, q: usize, r: usize },

    #[error("element {0} lies outside the materialized window")]
    ElementOutOfWindow(String),

    #[error("invalid lattice document: {0}")]
    Document(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

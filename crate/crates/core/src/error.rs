//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order cap exceeded (cap {cap})")]
    CapExceeded { cap: usize },
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: usize, order: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("p-subgroup count cap exceeded (cap {cap})")]
    CapExceeded { cap: usize },
    #[error("subgroups {lo} and {hi} are not comparable")]
    NotComparable { lo: usize, hi: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("category invariant violated: {0}")]
    Invalid(String),
    #[error("cycle of nonisomorphisms detected; category is not EI")]
    CycleDetected,
    #[error("functor does not preserve {0}")]
    NotFunctorial(String),
    #[error("import error: {0}")]
    Import(String),
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("the automorphism count at object {object} does not match the flavor formula: got {got}, expected {expected}")]
    MismatchedAutGroup {
        object: String,
        got: usize,
        expected: usize,
    },
    #[error("selfcentralizing predicates disagree at {0}; fusion/group equivalence violated")]
    EquivalenceViolation(String),
    #[error("extension test precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

#[derive(Debug, Error)]
pub enum EulerError {
    #[error("category admits no weighting")]
    NoWeighting,
    #[error("weighting is not unique")]
    NonUniqueWeighting,
    #[error(transparent)]
    Category(#[from] CategoryError),
}

#[derive(Debug, Error)]
pub enum NerveError {
    #[error("chain budget exceeded at degree {degree}: {count} chains over budget {budget}")]
    BudgetExceeded {
        degree: usize,
        count: usize,
        budget: usize,
    },
}

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("bar basis budget exceeded: {count} tuples over budget {budget}")]
    BudgetExceeded { count: usize, budget: usize },
}

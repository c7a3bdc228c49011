use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // finite groups
    #[error("group closure exceeded the element cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("automorphism order does not divide {k}")]
    OrderMismatch { k: usize },
    #[error("generator images do not define a homomorphism: {0}")]
    NotWellDefined(String),
    #[error("map is not bijective")]
    NotBijective,
    #[error("element is not in the group")]
    NotInGroup,

    // exact linear algebra
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("inconsistent numerics: {0}")]
    Inconsistent(String),
    #[error("matrix does not satisfy U^{k} = 1")]
    NotFiniteOrder { k: usize },
    #[error("matrix is not unitary")]
    NotUnitary,

    // models
    #[error("character evaluation requires a finite abelian subgroup")]
    FreePartPresent,
    #[error("orbit structure is not quasi-transitive")]
    NotQuasiTransitive,
    #[error("invalid Latin family: {0}")]
    InvalidFamily(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("map is not a representation: {0}")]
    NotRepresentation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

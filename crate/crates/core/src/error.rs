use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("lattice is not between the root and weight lattices: {0}")]
    LatticeOutOfRange(String),
    #[error("action is not a pinned lattice automorphism: {0}")]
    UnpinnedAction(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("group of order {order} exceeds the cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("invalid finite field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("zero scalar where a unit is required")]
    ZeroScalar,
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("tame relation violated at entry ({row}, {col})")]
    TameRelation { row: usize, col: usize },
    #[error("invalid local field descriptor: {0}")]
    InvalidLocalField(String),
    #[error("generalised 2-cocycle violates axiom ({axiom}) at {witness}")]
    CocycleAxiom { axiom: u8, witness: String },
    #[error("not a rigidified extension: {0}")]
    NotRigidified(String),
    #[error("mixed root {witness:?} found; input is not a Levi of codimension 2")]
    MixedRoot { witness: Vec<i64> },
    #[error("not a codimension-2 Levi: dim G - dim L = {0}")]
    NotCodimTwo(usize),
    #[error("search space of size {size} exceeds the cap of {cap}")]
    SizeCap { size: u128, cap: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

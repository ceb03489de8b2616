use thiserror::Error;

/// Errors raised by lattice constructions and algorithms.
///
/// Failed hypotheses in the general-type pipeline are reported as verdicts,
/// not as errors; this type is reserved for malformed input and violated
/// preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("d = {0} is not a negative squarefree integer")]
    InvalidDiscriminant(i64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("Gram matrix is not Hermitian")]
    NotHermitian,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate")]
    Degenerate,
    #[error("lattice is not integral")]
    NotIntegral,
    #[error("form is indefinite (signature ({0}, {1}))")]
    Indefinite(usize, usize),
    #[error("vector is isotropic")]
    Isotropic,
    #[error("{0} is not a unit of the ring of integers")]
    NotUnit(String),
    #[error("reflection multiplier must differ from 1")]
    TrivialUnit,
    #[error("map is not an isometry of the form")]
    NotIsometry,
    #[error("matrix has non-integral entries")]
    NonIntegralMatrix,
    #[error("ring of integers for d = {0} is not norm-Euclidean")]
    NonEuclidean(i64),
    #[error("sublattice generators are linearly dependent")]
    DependentGenerators,
    #[error("invalid glue vector: {0}")]
    InvalidGlue(String),
    #[error("odd root count {0}")]
    OddRootCount(u64),
    #[error("weight {weight} is not divisible by multiplicity {multiplicity}")]
    NotDivisible { weight: String, multiplicity: u64 },
    #[error("cannot parse lattice label {0:?}")]
    BadLabel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

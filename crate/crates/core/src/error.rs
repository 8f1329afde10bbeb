use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit in 32 bits")]
    ModulusTooLarge(u64),
    #[error("division by zero in the prime field")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live over different prime fields ({0} vs {1})")]
    FieldMismatch(u64, u64),
    #[error("generator is the zero polynomial")]
    ZeroGenerator,
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("polynomial has degree {found}, expected {expected}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("degree out of range (primitive class would vanish or be undefined): d = {degree}, e = {e}")]
    DegreeOutOfRange { degree: i64, e: i64 },
    #[error("degrees {degrees:?} are not normalized for e = {e} (need every d <= e/2)")]
    NotNormalized { degrees: Vec<u32>, e: u32 },
    #[error("chi table queried at {m}, valid only through {valid_through}")]
    ChiTableExhausted { m: i64, valid_through: i64 },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("no hypersurface of degree e contains the cycle")]
    EmptyFiber,
    #[error("expected {expected} generators, found {found}")]
    WrongGeneratorCount { expected: usize, found: usize },
    #[error("regular-sequence check failed at degree {degree}: brute {brute}, formula {expected}")]
    NotRegular { degree: i64, brute: i64, expected: i64 },
    #[error("no certified witness after {attempts} attempts")]
    CertificationExhausted { attempts: usize },
    #[error("not Gorenstein of expected socle degree: {0}")]
    NotGorenstein(String),
    #[error("subspace has codimension {found} in S_{degree}, expected 1")]
    NotCodimensionOne { degree: u32, found: usize },
    #[error("base point free hypothesis violated: h({degree}) = {h}")]
    BasePoints { degree: u32, h: usize },
    #[error("cycle not contained in hypersurface")]
    NotContained,
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("profile has no block of degrees equal to e/2")]
    NoAntisymmetricBlock,
    #[error("witness carries no cofactors Q / polynomial F")]
    MissingCofactors,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

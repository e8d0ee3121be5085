use alloc::string::String;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid extension degree: a = {a}, ell = {ell}")]
    InvalidDegree { a: u32, ell: u32 },
    #[error("field of size {p}^{degree} exceeds the cap of 2^{max_bits} elements")]
    FieldTooLarge { p: u32, degree: u32, max_bits: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree {degree} over GF({p})")]
    ReducibleModulus { p: u32, degree: u32 },
    #[error("no irreducible polynomial found (internal error)")]
    NoIrreducible,
    #[error("coordinate vector is not a valid field element: {0}")]
    InvalidCoordinates(String),
    #[error("basis has rank {rank} over the subfield, expected {expected}")]
    DependentBasis { rank: usize, expected: usize },
    #[error("basis pair does not satisfy trace duality")]
    NotDual,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("subspace W is not contained in the image of the map")]
    WNotInImage,
    #[error("enumeration of {size} elements exceeds the budget of {budget}")]
    TooLarge { size: u64, budget: u64 },
    #[error("polynomial degree {degree} exceeds the bound {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("invalid repair scheme: {0}")]
    InvalidScheme(String),
    #[error("transform matrix is singular over the subfield")]
    SingularMatrix,
    #[error("repair matrix at the target node is singular")]
    SingularRepairMatrix,
    #[error("character sum is not an integer multiple of {divisor}: {detail}")]
    NonIntegerSum { divisor: u64, detail: String },
    #[error("character sum routes disagree: direct {direct}, membership {membership}")]
    CharSumMismatch { direct: i64, membership: i64 },
    #[error("polynomial degree {degree} is divisible by the characteristic {p}")]
    DegreeSharesCharacteristic { degree: usize, p: u32 },
    #[error("bound not available in this regime: {0}")]
    UnsupportedRegime(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no feasible assignment: {0}")]
    Infeasible(String),
    #[error("elements are linearly dependent over the subfield")]
    DependentBetas,
    #[error("linear system has no admissible solution (internal error)")]
    NoSolution,
    #[error("construction parameter violation: {0}")]
    ParamViolation(String),
    #[error("no suitable primitive element found (internal error)")]
    NoSuitableTheta,
}

pub type Result<T> = core::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}: zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("degree too small: need at least {needed}, got {got}")]
    DegreeTooSmall { needed: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial division leaves a remainder")]
    NotDivisible,
    #[error("substitution by a constant is degenerate")]
    DegenerateSubstitution,
    #[error("integer too hard to factor by trial division")]
    FactorizationTooHard,
    #[error("denominator divisible by {0}")]
    BadPrime(u64),
    #[error("leading coefficient vanishes: {0}")]
    DegreeDrop(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("size cap exceeded: {what} would exceed {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("inconsistent branch data: {0}")]
    InconsistentBranchData(String),
    #[error("irregular Newton polygon: segment of length {length} with slope denominator {denominator}")]
    IrregularPolygon { length: usize, denominator: u64 },
    #[error("undefined register: {0}")]
    UndefinedRegister(String),
    #[error("group order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: String, found: String },
    #[error("kernel check failed: {0}")]
    Kernel(String),
    #[error("relator check failed: {0}")]
    Relator(String),
    #[error("lifted subgroup closure has {found} elements, expected {expected}")]
    LiftSize { expected: usize, found: usize },
    #[error("no lift of equal element order for {0}")]
    NoEqualOrderLift(String),
    #[error("unstable ramification pattern: {0}")]
    UnstablePattern(String),
    #[error("element not found: {0}")]
    NotFound(String),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("polynomial is not monic with integer coefficients")]
    NotMonic,
    #[error("internal error: {0}")]
    Internal(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

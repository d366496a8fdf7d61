use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),

    #[error("cannot parse group ring element {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a Mersenne prime")]
    NotMersenne(u64),

    #[error("{a} is not coprime to {m}")]
    NotCoprime { a: u64, m: u64 },

    #[error("input {value} out of range: {reason}")]
    OutOfRange { value: u64, reason: String },

    #[error("n = {n} exceeds the brute-force cap of {cap}")]
    BruteForceCap { n: usize, cap: usize },

    #[error("census for n = {n} needs 2^{cosets} idempotents, over the cap of 2^{cap}")]
    CensusCap { n: usize, cosets: usize, cap: usize },

    #[error("expected odd modulus, got {0}")]
    EvenModulus(usize),

    #[error("element {0} is not idempotent")]
    NotIdempotent(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("inconclusive: square-root kernel dimension {dim} exceeds cap {cap} and no construction applies")]
    Inconclusive { dim: usize, cap: usize },

    #[error("invalid basic pair input: {0}")]
    InvalidPairs(String),

    #[error("construction check failed: {0}")]
    ConstructionFailed(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

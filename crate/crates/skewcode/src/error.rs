use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring presentation has a bad shape: {0}")]
    BadShape(String),
    #[error("multiplication is not commutative on basis pair (a_{i}, a_{j})")]
    NonCommutative { i: usize, j: usize },
    #[error("multiplication is not associative on basis triple (a_{i}, a_{j}, a_{k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("a_1 does not act as the identity on basis element a_{0}")]
    NoIdentity(usize),
    #[error("unknown builtin ring `{0}`")]
    UnknownRing(String),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("map is not a unitary endomorphism")]
    NotEndomorphism,
    #[error("theta is not an automorphism")]
    NotAutomorphism,
    #[error("polynomials have different (ring, theta, delta) contexts")]
    ContextMismatch,
    #[error("leading coefficient is not invertible")]
    NonInvertibleLead,
    #[error("message length {got} does not match code dimension {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("sigma is not an automorphism of order dividing 2")]
    BadSigma,
    #[error("enumeration budget exceeded: {size} > {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("weight `{weight}` is not defined for ring `{ring}`")]
    WeightUndefinedForRing { weight: String, ring: String },
    #[error("coefficient modulus {0} is not prime")]
    NonPrimeModulus(u32),
    #[error("divisor leading coefficient contains variables")]
    SymbolicLead,
    #[error("unknown map `{0}`")]
    UnknownMap(String),
    #[error("`{g}` is not a two-sided divisor of any monic degree-{n} polynomial")]
    NoTwoSidedMultiple { g: String, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid code parameters: {0}")]
    BadCode(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

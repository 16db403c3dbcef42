use thiserror::Error;

/// Every failure the pipeline can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator {0} is not square-free")]
    NotSquarefree(String),

    #[error("generators are not a minimal generating set: {divisor} divides {multiple}")]
    NotMinimalGenerating { divisor: String, multiple: String },

    #[error("the unit monomial cannot be a generator")]
    UnitGenerator,

    #[error("{divisor} does not divide {dividend}")]
    NonDivisible { dividend: String, divisor: String },

    #[error("complement of facet {0} is empty")]
    EmptyComplementFacet(usize),

    #[error("complex is not a quasi-forest: no leaf among facets {remaining:?}")]
    NotQuasiForest { remaining: Vec<usize> },

    #[error(
        "ideal does not have projective dimension one: complement facets of generators {stuck:?} contain no leaf"
    )]
    NotProjectiveDimensionOne { stuck: Vec<String> },

    #[error("declared generator order {0:?} does not satisfy the leaf condition")]
    InvalidDeclaredOrder(Vec<usize>),

    #[error("invalid joint function: {0}")]
    InvalidTau(String),

    #[error("two exponent vectors expand to the same generator {0}")]
    DuplicateGenerator(String),

    #[error("exponent vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),

    #[error("index {0} is not in the support")]
    NotInSupport(usize),

    #[error("the empty face has no lcm label")]
    EmptyFace,

    #[error("{what} needs {needed} but the cap is {cap}")]
    TooLarge {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("verification failed: {0:?}")]
    VerificationFailed(Vec<String>),

    #[error("invalid gradient path: {0}")]
    InvalidPath(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

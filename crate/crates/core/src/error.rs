use thiserror::Error;

/// Every failure the workbench can report.
///
/// Variants fall into three families that the CLI maps onto exit codes:
/// verification failures (an expected identity did not hold), bad input,
/// and insufficient precision.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero leading coefficient: series is not invertible")]
    ZeroLeadingCoefficient,
    #[error("zero resultant: the polynomials share a component")]
    ZeroResultant,
    #[error("bad prime {0}: divides the leading coefficient or is not prime")]
    BadPrime(u64),
    #[error("no shift in the searched range makes the norm squarefree")]
    ShiftExhausted,
    #[error("even modulus {0}")]
    EvenModulus(i64),
    #[error("{0} is divisible by the modulus {1}")]
    DivisibleInput(i64, i64),
    #[error("unsupported level {0}: need a prime N = 1 (mod 4)")]
    BadLevel(u64),
    #[error("coefficient of X^{0} does not lie in Q(sqrt {1})")]
    CoercionFailure(usize, u64),
    #[error("series is not invariant under sqrt(N) -> -sqrt(N) at q^{0}")]
    RationalityFailure(i64),
    #[error("precision too low: need {needed}, have {have}")]
    PrecisionTooLow { needed: i64, have: i64 },
    #[error("imaginary part {0} below the admissible bound {1}")]
    LowImaginaryPart(f64, f64),
    #[error("matrix is not in Gamma_0({0})")]
    NotInGamma0(u64),
    #[error("level {0} is not congruent to 5 mod 8")]
    BadCongruenceClass(u64),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("reduction at {0} is not multiplicative")]
    NotMultiplicative(u64),
    #[error("Hecke field of degree {0} is not supported")]
    FieldDegreeTooHigh(usize),
    #[error("plus space has {found} forms, genus formula says {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("recurrence contradicts the curve equation: {0}")]
    InconsistentModel(String),
    #[error("division by a series that vanishes to working precision")]
    DivisionByZeroSeries,
    #[error("no relation found: {0}")]
    NoRelation(String),
    #[error("relation is not unique: kernel of dimension {0}")]
    NonUniqueRelation(usize),
    #[error("missing Fricke eigenvalue data")]
    MissingEigenData,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("unexpected factorization: {0}")]
    UnexpectedFactorization(String),
    #[error("need at least {needed} sampled primes, have {have}")]
    InsufficientSamples { needed: usize, have: usize },
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionTooLow { .. } => 3,
            Error::VerificationFailed(_)
            | Error::RationalityFailure(_)
            | Error::CoercionFailure(..)
            | Error::InconsistentModel(_)
            | Error::DimensionMismatch { .. }
            | Error::DegreeMismatch { .. }
            | Error::UnexpectedFactorization(_)
            | Error::NoRelation(_)
            | Error::NonUniqueRelation(_)
            | Error::ZeroResultant => 1,
            _ => 2,
        }
    }

    /// Short stable tag for machine-parseable one-line reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::ZeroLeadingCoefficient => "ZeroLeadingCoefficient",
            Error::ZeroResultant => "ZeroResultant",
            Error::BadPrime(_) => "BadPrime",
            Error::ShiftExhausted => "ShiftExhausted",
            Error::EvenModulus(_) => "EvenModulus",
            Error::DivisibleInput(..) => "DivisibleInput",
            Error::BadLevel(_) => "BadLevel",
            Error::CoercionFailure(..) => "CoercionFailure",
            Error::RationalityFailure(_) => "RationalityFailure",
            Error::PrecisionTooLow { .. } => "PrecisionTooLow",
            Error::LowImaginaryPart(..) => "LowImaginaryPart",
            Error::NotInGamma0(_) => "NotInGamma0",
            Error::BadCongruenceClass(_) => "BadCongruenceClass",
            Error::BadReduction(_) => "BadReduction",
            Error::NotMultiplicative(_) => "NotMultiplicative",
            Error::FieldDegreeTooHigh(_) => "FieldDegreeTooHigh",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ParseError { .. } => "ParseError",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::InconsistentModel(_) => "InconsistentModel",
            Error::DivisionByZeroSeries => "DivisionByZeroSeries",
            Error::NoRelation(_) => "NoRelation",
            Error::NonUniqueRelation(_) => "NonUniqueRelation",
            Error::MissingEigenData => "MissingEigenData",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::UnexpectedFactorization(_) => "UnexpectedFactorization",
            Error::InsufficientSamples { .. } => "InsufficientSamples",
            Error::BadInput(_) => "BadInput",
            Error::VerificationFailed(_) => "VerificationFailed",
        }
    }
}

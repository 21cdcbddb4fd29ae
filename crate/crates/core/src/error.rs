use thiserror::Error;

/// Every failure the library can report.
///
/// Nothing in the arithmetic layer traps on bad input: division by zero,
/// singular systems and off-chart configurations all come back as one of
/// these values so callers can branch on them (the CLI falls back to the
/// Cantor route on [`Error::DegenerateConfiguration`], for instance).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("prime field requested without a modulus")]
    MissingModulus,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("matrix is {0}x{1}, expected a square matrix")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("points lie over different curves")]
    AnchorMismatch,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("division by u1*u2 left a nonzero remainder")]
    NonzeroRemainder,
    #[error("product R(x,y)R(x,-y) is not monic of degree 3g")]
    NotMonicDegree3g,
    #[error("abscissae of the point list are not pairwise distinct")]
    RepeatedAbscissa,
    #[error("grading scale must be nonzero")]
    ZeroScale,
    #[error("u does not divide v^2 - f")]
    NotOnJacobian,
    #[error("divisor has degree {0} < genus {1}; outside the C^(3g) chart")]
    NonGenericDivisor(usize, usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("zero denominator during evaluation")]
    ZeroDenominator,
    #[error("invalid genus {0}")]
    InvalidGenus(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

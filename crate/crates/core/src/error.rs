use thiserror::Error;

/// Every failure the library can report.
///
/// Variants map onto stable numeric codes (see [`Error::code`]) which the
/// command-line front end uses as process exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("absolute degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("field is not a subfield of the element's tower")]
    NotASubfield,
    #[error("defining polynomial is not irreducible over the base field")]
    Reducible,
    #[error("operands live in unrelated fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not a root of unity of the required order")]
    NotRootOfUnity,
    #[error("ramification of the form is incompatible with the module's variable")]
    RamificationMismatch,
    #[error("truncated series precision is too low for this operation")]
    PrecisionTooLow,
    #[error("adaptive precision exhausted after {doublings} doublings (last working precision {precision})")]
    PrecisionExhausted { precision: i64, doublings: u32 },
    #[error("form does not have the required x-degree")]
    DegreeMismatch,
    #[error("r must be a rational number greater than 1")]
    RNotAboveOne,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("descent is not integral: weight {weight} is not divisible by degree {degree}")]
    NonIntegralDescent { weight: u64, degree: usize },
    #[error("bad chart indices: need k > n >= 1 (got n = {n}, k = {k})")]
    BadIndices { n: u64, k: u64 },
    #[error("uniformizer change must have a nonzero leading unit")]
    ZeroUnit,
    #[error("parse error at position {position}: expected {}", expected.join(" or "))]
    Parse {
        position: usize,
        expected: Vec<String>,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable process exit code for this error class.
    pub fn code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Unsupported(_) => 3,
            Error::PrecisionExhausted { .. } | Error::PrecisionTooLow => 4,
            Error::DegreeCapExceeded { .. } => 5,
            Error::NonIntegralDescent { .. } | Error::Internal(_) => 6,
            Error::Invalid(_) | Error::BadIndices { .. } | Error::RNotAboveOne => 7,
            Error::Io(_) => 8,
            _ => 9,
        }
    }

    /// Short machine-readable name, printed alongside the message on stderr.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
            Error::NotASubfield => "NotASubfield",
            Error::Reducible => "Reducible",
            Error::FieldMismatch => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotRootOfUnity => "NotRootOfUnity",
            Error::RamificationMismatch => "RamificationMismatch",
            Error::PrecisionTooLow => "PrecisionTooLow",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::DegreeMismatch => "DegreeMismatch",
            Error::RNotAboveOne => "RNotAboveOne",
            Error::Unsupported(_) => "Unsupported",
            Error::NonIntegralDescent { .. } => "NonIntegralDescent",
            Error::BadIndices { .. } => "BadIndices",
            Error::ZeroUnit => "ZeroUnit",
            Error::Parse { .. } => "ParseError",
            Error::Invalid(_) => "InvalidInput",
            Error::Internal(_) => "Internal",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields")]
    DescriptorMismatch,
    #[error("not a finite extension inside the field tower")]
    NotAFiniteExtension,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("series is indistinguishable from zero at the current precision")]
    ZeroLeadingTerm,
    #[error("division by {divisor} is not exact over the integers at index {index}")]
    NotIntegral { index: u64, divisor: u64 },
    #[error("unghosting is impossible in positive characteristic; route through an integral lift")]
    CharacteristicObstruction,
    #[error("truncation set is empty")]
    EmptyTruncation,
    #[error("invalid truncation set: {0}")]
    InvalidTruncation(String),
    #[error("target truncation set is not contained in the source")]
    NotSubTruncation,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("precision {have} does not reach exponent {needed}")]
    InsufficientPrecision { needed: i64, have: i64 },
    #[error("pole or zero not covered by the supplied places: {0}")]
    UncoveredPole(String),
    #[error("modulus condition fails at {place} for s = {index}")]
    ModulusViolation { place: String, index: u64 },
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("operation unsupported for this ring: {0}")]
    UnsupportedRing(String),
    #[error("{message} at {line}:{column}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;

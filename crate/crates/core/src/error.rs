use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("enumeration budget exceeded for {what}: needs {needed}, budget is {budget}")]
    EnumerationBudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("bad Goppa polynomial: {0}")]
    BadGoppaPolynomial(String),

    #[error("no irreducible polynomial of degree {degree} avoids the excluded points")]
    NoIrreducible { degree: usize },

    #[error("insufficient labelweight: {0}")]
    InsufficientLabelweight(String),

    #[error("server {server} is missing share data: {detail}")]
    MissingShare { server: usize, detail: String },

    #[error("eval coefficient for coordinate {coordinate} uses a monomial server {server} cannot compute")]
    NonLocalCoefficient { coordinate: usize, server: usize },

    #[error("{0} is not a perfect cube")]
    NotACube(u64),

    #[error("condition violated: {0}")]
    ConditionViolated(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Decode(#[from] DecodeError),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Wire-format decoding failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("unsupported frame version {0:#04x}")]
    BadVersion(u8),
    #[error("unknown message kind {0}")]
    BadKind(u8),
    #[error("frame truncated: need {needed} bytes, have {have}")]
    Truncated { needed: usize, have: usize },
    #[error("payload length {declared} does not match {actual} trailing bytes")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("element width {0} is not usable")]
    BadWidth(u8),
    #[error("element {value} is outside a field of order {order}")]
    ElementOutOfRange { value: u32, order: u32 },
    #[error("unexpected message: {0}")]
    Unexpected(String),
    #[error("invalid hex in transcript: {0}")]
    BadHex(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

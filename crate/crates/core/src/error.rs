use thiserror::Error;

/// Errors raised by the digit layer, the division algorithms and their applications.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radix {0} is outside the supported range 2..=2^31")]
    InvalidRadix(u64),

    #[error("digit {digit} is not below the radix {beta}")]
    DigitOutOfRange { digit: u64, beta: u32 },

    #[error("invalid decimal numeral: {0}")]
    InvalidNumeral(String),

    #[error("numeral has {len} characters, limit is {limit}")]
    NumeralTooLong { len: usize, limit: usize },

    #[error("operands use different radixes ({0} and {1})")]
    RadixMismatch(u32, u32),

    #[error("gcd({digit}, {beta}) != 1: digit has no inverse modulo the radix")]
    NotInvertible { digit: u32, beta: u32 },

    #[error("{value} is not invertible modulo {modulus}")]
    NoModularInverse { value: String, modulus: String },

    #[error("precision s must be at least 1")]
    ZeroPrecision,

    #[error("operand is zero")]
    ZeroOperand,

    #[error("division by zero")]
    DivisionByZero,

    #[error("complement position {k} lies below the boundary r = {r}")]
    ComplementIndex { k: usize, r: usize },

    #[error("dmod needs len(u) >= len(v), got {s} < {t}")]
    NumeratorTooShort { s: usize, t: usize },

    #[error("v does not divide u exactly")]
    NotExact,

    #[error("expansion is not purely periodic: gcd(denominator, {beta}) != 1")]
    NotPurelyPeriodic { beta: u32 },

    #[error("fraction must satisfy 0 < u < v")]
    InvalidFraction,

    #[error("multiplicative order exceeds the cap {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("parallel step writes cell {cell} twice")]
    OverlappingWrite { cell: usize },

    #[error("parallel step writes cell {cell} outside a state of {len} cells")]
    WriteOutOfRange { cell: usize, len: usize },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for failures that indicate a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::OverlappingWrite { .. } | Error::WriteOutOfRange { .. } | Error::InvariantViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

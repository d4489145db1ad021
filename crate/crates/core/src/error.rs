use alloc::string::String;

/// Everything that can go wrong inside the kernel.
///
/// Variants fall into three families that callers (the CLI in particular)
/// treat differently: malformed input, violated mathematical preconditions,
/// and exhausted resource budgets.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("rings with more than {max} variables are not supported (got {got})")]
    TooManyVariables { max: usize, got: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("operands live in different rings")]
    SignatureMismatch,
    #[error("the zero polynomial has no degree or initial form")]
    ZeroPolynomial,
    #[error("variable `{0}` occurs but has no image under the map")]
    UnmappedVariable(String),
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("expression syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("generator `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("the zero ideal has no tangent-cone certificate")]
    ZeroIdeal,
    #[error("the quotient is not supported only at the origin")]
    SupportNotOrigin,
    #[error("the intersection is not proper: colength is infinite")]
    ImproperIntersection,
    #[error("element is a zero divisor modulo the ideal")]
    ZeroDivisor,
    #[error("order of the element is {ord}, below the required {required}")]
    OrderTooLow { ord: u32, required: u32 },
    #[error("ring has no uniformizer variable")]
    MissingUniformizer,
    #[error("ideal is not flat over the uniformizer")]
    NotFlat,
    #[error("components must have complementary dimension ({dim_m} + {dim_n} != {dim_a})")]
    NotComplementary { dim_m: usize, dim_n: usize, dim_a: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("finite differences did not stabilize within n <= {max_n}")]
    NotStabilized { max_n: usize },
    #[error("tangent-cone certificate failed in degree {degree}: gr has {graded}, Hilbert-Samuel difference is {samuel}")]
    CertificateFailure { degree: usize, graded: u64, samuel: u64 },
}

impl Error {
    /// Coarse classification used to pick process exit codes.
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            NotPrime(_) | DuplicateVariable(_) | UnknownVariable(_) | TooManyVariables { .. }
            | Syntax { .. } | InvalidArgument(_) => ErrorKind::Input,
            BudgetExceeded(_) | NotStabilized { .. } | CertificateFailure { .. } => ErrorKind::Budget,
            _ => ErrorKind::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Precondition,
    Budget,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

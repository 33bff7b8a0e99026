use std::fmt;

/// Failure to read the polynomial / field-element text syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite numeric value produced by {0}")]
    NonFinite(&'static str),
    #[error("invalid linear map: the coefficient of z must be nonzero")]
    InvalidLinearMap,
    #[error("no exact root of order {order} of {value} lies in Q(w); retry with --mode approx")]
    ExactRootUnavailable { order: u32, value: String },
    #[error("constant polynomials cannot be normalized")]
    DegreeZero,
    #[error("linear polynomial with leading coefficient {0} is not conjugate to a monic one")]
    LinearNotNormalizable(String),
    #[error("map with a = 0 is not bijective")]
    NotBijective,
    #[error("{0} is not a cube root of unity")]
    NotCubeRootOfUnity(String),
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("invalid degree specification: {0}")]
    InvalidDegreeSpec(String),
    #[error("leading coefficient {0} has no admissible root in Q(w); retry with --mode approx")]
    NotMonic(String),
    #[error("expected a monic quartic, got {0}")]
    NotNormalizedQuartic(String),
    #[error("expected a quartic, got degree {0}")]
    NotQuartic(usize),
    #[error("order must be at least {min}, got {got}")]
    InvalidOrder { min: u32, got: u32 },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

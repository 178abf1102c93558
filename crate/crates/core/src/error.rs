use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GqError {
    #[error("modulus {0:#b} is not irreducible over F_2")]
    IrreducibleRequired(u64),
    #[error("unsupported extension degree {0} (must be 1..=31)")]
    UnsupportedDegree(u32),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("operands belong to different fields (moduli {0:#b} and {1:#b})")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element code {code} out of range for field of order {q}")]
    ElementOutOfRange { code: u64, q: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("basis is not linearly independent over F_2")]
    NotABasis,
    #[error("operation requires a self-dual basis")]
    SelfDualRequired,
    #[error("operation requires a pure X-type or pure Z-type Pauli")]
    PureTypeRequired,
    #[error("state is not an eigenstate of every power of the Pauli")]
    NotEigenstate,
    #[error("dimension {dim} exceeds the dense cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("operation requires a full tableau (m_X + m_Z = n)")]
    FullTableauRequired,
    #[error("gate is not unitary: {0}")]
    NonUnitary(String),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("rows are linearly dependent: {0}")]
    RankDeficient(String),
    #[error("X and Z blocks are not orthogonal: {0}")]
    NotCommuting(String),
    #[error("row scale factor must be nonzero")]
    InvalidScale,
    #[error("Hadamard on site {0} would leave CSS form")]
    NotCssPreserving(usize),
    #[error("weight {w} is below the minimum distance {d}")]
    WeightBelowDistance { w: usize, d: usize },
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("decoding failed")]
    DecodeFailure,
    #[error("invalid nesting: k1 = {k1} > k2 = {k2}")]
    InvalidNesting { k1: usize, k2: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GqError>;

impl From<std::io::Error> for GqError {
    fn from(e: std::io::Error) -> Self {
        GqError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for GqError {
    fn from(e: serde_json::Error) -> Self {
        GqError::Parse(e.to_string())
    }
}

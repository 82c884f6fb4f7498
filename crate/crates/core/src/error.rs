use thiserror::Error;

use crate::hilbert::HilbertProfile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("modulus {0} is not a prime in (2, 2^31)")]
    InvalidModulus(u32),
    #[error("unsupported number of variables {0} (expected 1..=16)")]
    VariableCount(usize),
    #[error("degree {0} exceeds the supported maximum of 255")]
    DegreeTooLarge(u32),
    #[error("cannot add forms of degrees {left} and {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("term has degree {got}, form is declared of degree {declared}")]
    InhomogeneousTerm { declared: u32, got: u32 },
    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("minor selection is {rows}x{cols}, not square")]
    NonSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("entry ({row}, {col}) is not a linear form")]
    NotLinear { row: usize, col: usize },
    #[error("invalid construction parameters: {0}")]
    Parameters(String),
    #[error("r = 0: the union matrix degenerates to the big matrix itself")]
    DegenerateUnion,
    #[error("malformed document: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("integer overflow while evaluating a closed form")]
    Overflow,
    #[error("inconsistent resolution shape: {0}")]
    InconsistentShape(String),
    #[error("h-vector has a negative entry at index {0}")]
    NegativeEntry(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("difference sequence is negative at index {index}: not ACM at this cutoff")]
    NotAcm { index: usize },
    #[error("profile is too short: the difference sequence has not reached zero by the cutoff")]
    ProfileTooShort,
    #[error("codimension {codim} exceeds the number of variables {nvars}")]
    Codimension { codim: usize, nvars: usize },
}

#[derive(Debug, Clone, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("Hilbert function did not stabilize by degree {}; the intersection is not zero-dimensional at this cutoff", .0.cutoff)]
    NotStabilized(Box<HilbertProfile>),
    #[error("unknown scenario id {0:?}")]
    UnknownScenario(String),
    #[error("{0}")]
    Precondition(String),
}

use thiserror::Error;

use crate::exact_arith::Symbol;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol {0} is not registered in this polynomial context")]
    UnregisteredSymbol(Symbol),
    #[error("invalid rational literal `{0}` (expected p/q or an integer)")]
    BadRational(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("zero polynomial has no roots or square-free part")]
    ZeroPolynomial,
    #[error("division is not exact")]
    InexactDivision,
    #[error("series has nonzero constant term")]
    NonzeroConstantTerm,
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("module parameters mix symbolic and numeric values")]
    ParameterMix,
    #[error("operation needs numeric module parameters")]
    NeedsNumeric,
    #[error("jordan size must be at least 1")]
    ZeroJordan,
    #[error("label {0} is outside the module")]
    LabelOutOfRange(String),
    #[error("vectors live at different levels ({0} and {1})")]
    LevelMismatch(usize, usize),
    #[error("non-negative mode L({0}) in a singular-vector word")]
    NonNegativeMode(i64),
    #[error("operator is not Euler-homogeneous")]
    Inhomogeneous,
    #[error("indicial polynomial is not numeric; cannot locate roots")]
    SymbolicRoots,
    #[error("indicial polynomial has roots outside Q: residual factor {0}")]
    IrrationalRoots(String),
    #[error("right-hand side must be a single term")]
    RhsNotSingleTerm,
    #[error("central term degenerate: {0}")]
    CentralTermDegenerate(String),
    #[error("case outside implemented family: {0}")]
    OutsideFamily(String),
    #[error("no logarithmic solution: forcing exponent is not resonant")]
    NotResonant,
    #[error("invalid fixture parameters: {0}")]
    FixtureParams(String),
    #[error("closed-form cocycle undefined for this pair; use residue cocycle")]
    ClosedFormDomain,
}

pub type Result<T> = std::result::Result<T, Error>;

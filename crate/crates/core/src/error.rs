use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid fraction {p}/{q}: denominator must be non-zero and coprime to the numerator")]
    InvalidFraction { p: String, q: String },

    #[error("invalid modulus {0}: Dedekind sums need a positive modulus")]
    InvalidModulus(String),

    #[error("invalid level r = {0}: need r >= 2")]
    InvalidLevel(u32),

    #[error("shape error: {0}")]
    ShapeError(String),

    #[error("matrix entries do not have determinant 1")]
    NotUnimodular,

    #[error("Rademacher phi of {0} is not an integer")]
    NonIntegralPhi(String),

    #[error("pair ({0}, {1}) describes a generalized fibration, which is not supported")]
    UnsupportedGeneralizedFibration(i64, i64),

    #[error("operation requires normalized Seifert invariants")]
    NormalizeFirst,

    #[error("invalid Seifert data: {0}")]
    InvalidSeifert(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("label {0} is self-dual but has no epsilon sign")]
    MissingEpsilon(usize),

    #[error("complexity cap exceeded: {0}")]
    ComplexityCap(String),

    #[error("matrix has lower-left entry 0; use the generator word instead")]
    DiagonalCase,

    #[error("first Betti number is not available for this manifold")]
    MissingBetti,

    #[error("expected a real value, imaginary residual {0:e}")]
    NotReal(f64),

    #[error("modular datum: {0}")]
    Datum(String),
}

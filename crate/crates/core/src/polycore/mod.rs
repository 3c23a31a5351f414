//! Exact sparse multivariate polynomials over the rationals: parsing,
//! arithmetic, derivatives, substitution, determinants, gcd and
//! discriminants.

mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod univariate;

use num_bigint::BigInt;
use thiserror::Error;

pub use matrix::PolyMatrix;
pub use monomial::{Ambient, Monomial};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use univariate::{discriminant, resultant, sylvester_matrix, univariate_gcd, UniPoly};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn is_identifier_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("undeclared variable `{name}` at position {position}")]
    UndeclaredVariable { name: String, position: usize },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error("non-integer exponent at position {position}")]
    NonIntegerExponent { position: usize },
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndexOutOfRange { index: usize, nvars: usize },
    #[error("ambient mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: String, found: String },
    #[error("variable `{0}` has no image in the target ambient")]
    UnmappedVariable(String),
    #[error("assignment names unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("matrix of {rows}x{cols} cannot hold {entries} entries")]
    MatrixShape {
        rows: usize,
        cols: usize,
        entries: usize,
    },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected a univariate polynomial, found variable `{0}`")]
    MultivariateInput(String),
    #[error("polynomial has degree 0 in the chosen variable")]
    DegreeTooLow,
    #[error("divisor is not monic in the chosen variable")]
    NotMonic,
}

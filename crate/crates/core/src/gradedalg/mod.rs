//! Sparse polynomials over the rationals and graded pieces of Jacobian quotients.

mod parse;
mod poly;
mod quotient;

pub use parse::{infer_variables, parse_poly};
pub use poly::{monomials_of_degree, weighted_degree, Monomial, Poly};
pub use quotient::{
    graded_quotient_dim, jacobian_generators, quotient_dim, CyclicRestriction,
    GradedQuotientReport, QuotientOptions, DEFAULT_CHECK_PRIME,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("empty polynomial")]
    Empty,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("malformed exponent at offset {pos}")]
    MalformedExponent { pos: usize },
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid variable name {0:?}")]
    BadVariableName(String),
    #[error("variable {0:?} declared twice")]
    DuplicateVariable(String),
    #[error("expected {expected} variables, got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("polynomial is constant")]
    Constant,
    #[error("polynomial is not homogeneous for the grading in use")]
    Inhomogeneous,
    #[error("invalid weights: {0}")]
    BadWeights(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

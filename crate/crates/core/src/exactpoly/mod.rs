//! Exact arithmetic substrate: generalized binomials, sparse multivariate
//! Laurent polynomials with big-integer coefficients, rational evaluation
//! and division-free determinants.

mod binomial;
mod det;
mod poly;
mod serial;

pub use binomial::binomial;
pub use det::{determinant, determinant_int, DetRing, PolyMatrix};
pub use poly::{LaurentPolynomial, Monomial, MonomialMap, Ring};
pub use serial::{PolyJson, TermJson};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("exponent vector has length {got}, ring has {expected} variables")]
    Arity { expected: usize, got: usize },
    #[error("variable {var} is assigned zero but occurs with a negative exponent")]
    Domain { var: String },
    #[error("invalid monomial map: {0}")]
    InvalidMap(String),
    #[error("matrix is not square or entries use different rings")]
    BadMatrix,
    #[error("parse error: {0}")]
    Parse(String),
}

//! Exact fourfold refined enumeration of alternating sign trapezoids (ASTs)
//! and column strict shifted plane partitions (CSSPPs).
//!
//! Every generating function lives in the Laurent ring `Z[Q^±1, R^±1, S^±1, T^±1]`
//! ([`exactpoly::Ring::qrst`]) and can be computed by several independent
//! routes: brute-force enumeration of either object family, the binomial
//! determinant, and the nonintersecting lattice path sum. [`verify`] runs
//! them against each other.

pub mod ast;
pub mod csspp;
pub mod exactpoly;
pub mod formulas;
pub mod paths;
pub mod trees;
pub mod verify;

pub use exactpoly::{LaurentPolynomial, Ring};

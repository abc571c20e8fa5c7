//! Exact and numerical verification of Chazy's quasihomogeneous third-order
//! equations and the classification of the semicomplete members of the family.

pub mod algebra;
pub mod analytic;
pub mod catalog;
pub mod classifier;
pub mod fields;
pub mod verifier;

pub use algebra::{c, CycloNumber, MultiPoly, RatFun, Rational, Registry};

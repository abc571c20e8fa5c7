//! Exact arithmetic: rationals, Q(ζ₆₀), sparse polynomials, rational
//! functions, truncated power series and multiprecision complex numbers.

pub mod cyclo;
pub mod mp;
pub mod numpoly;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod series;
pub mod upoly;

pub use cyclo::{c, cyclo_constant, cyclo_field_build, sqrt_in_field, surd_coordinates, CycloNumber};
pub use mp::{embed_c64, embed_complex, MpComplex, MpFloat, Scalar};
pub use numpoly::{NumPoly, NumRatFun};
pub use parse::{parse_poly, parse_ratfun};
pub use poly::{Monomial, MultiPoly, Registry, WeightedDegree};
pub use ratfun::{ratfun_equal, RatFun};
pub use rational::{q, qi, Rational};
pub use series::PowerSeries;
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("constant `{0}` failed its defining relation")]
    ConstantCheckFailed(String),
    #[error("variable `{0}` not in registry")]
    UnknownVariable(String),
    #[error("registry mismatch: {0:?} vs {1:?}")]
    RegistryMismatch(Vec<String>, Vec<String>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator appeared in polynomial-only context")]
    NotPolynomial,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Minimal field interface shared by the generic series and univariate code.
pub trait FieldElem: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl FieldElem for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(n: i64) -> Self {
        qi(n)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if FieldElem::is_zero(self) {
            None
        } else {
            Some(num_traits::Inv::inv(self.clone()))
        }
    }
}

impl FieldElem for CycloNumber {
    fn zero() -> Self {
        CycloNumber::zero()
    }
    fn one() -> Self {
        CycloNumber::one()
    }
    fn from_i64(n: i64) -> Self {
        CycloNumber::from_int(n)
    }
    fn is_zero(&self) -> bool {
        CycloNumber::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CycloNumber::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycloNumber::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CycloNumber::mul(self, o)
    }
    fn neg(&self) -> Self {
        CycloNumber::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        CycloNumber::inv(self)
    }
}

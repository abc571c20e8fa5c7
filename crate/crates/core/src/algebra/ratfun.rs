//! Rational functions as unreduced numerator/denominator pairs.

use std::fmt;

use super::cyclo::CycloNumber;
use super::poly::{MultiPoly, Registry};
use super::AlgebraError;

#[derive(Clone)]
pub struct RatFun {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFun {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.vars() != den.vars() {
            return Err(AlgebraError::RegistryMismatch(
                num.vars().names().to_vec(),
                den.vars().names().to_vec(),
            ));
        }
        let mut r = RatFun { num, den };
        r.normalize_constant_den();
        Ok(r)
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RatFun { num: p, den }
    }

    pub fn constant(vars: &Registry, c: CycloNumber) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn var(vars: &Registry, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(vars, i))
    }

    pub fn gens(vars: &Registry) -> Vec<Self> {
        (0..vars.len()).map(|i| Self::var(vars, i)).collect()
    }

    fn normalize_constant_den(&mut self) {
        if let Some(c) = self.den.as_constant() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero constant");
                self.num = self.num.scale(&inv);
                self.den = MultiPoly::one(self.den.vars());
            }
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Registry {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this equals, if its denominator divides its numerator.
    pub fn to_poly(&self) -> Result<MultiPoly, AlgebraError> {
        if let Some(c) = self.den.as_constant() {
            return Ok(self.num.scale(&c.inv().ok_or(AlgebraError::DivisionByZero)?));
        }
        match self.num.exact_divide(&self.den)? {
            Ok(q) => Ok(q),
            Err(_) => Err(AlgebraError::NotPolynomial),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.den == o.den {
            return RatFun::new(self.num.try_add(&o.num)?, self.den.clone());
        }
        let n = self.num.try_mul(&o.den)?.try_add(&o.num.try_mul(&self.den)?)?;
        RatFun::new(n, self.den.try_mul(&o.den)?)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        RatFun::new(self.num.try_mul(&o.num)?, self.den.try_mul(&o.den)?)
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, AlgebraError> {
        if o.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RatFun::new(self.num.try_mul(&o.den)?, self.den.try_mul(&o.num)?)
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self, AlgebraError> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        RatFun::new(b.num.pow(k), b.den.pow(k))
    }

    /// Quotient rule for ∂/∂x_i.
    pub fn partial(&self, i: usize) -> Self {
        let n = &(&self.num.partial(i) * &self.den) - &(&self.num * &self.den.partial(i));
        let d = &self.den * &self.den;
        RatFun::new(n, d).expect("square of nonzero denominator")
    }

    /// Rational-function equality by cross-multiplication.
    pub fn equals(&self, o: &Self) -> bool {
        match (self.num.try_mul(&o.den), o.num.try_mul(&self.den)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Substitutes rational functions for the variables.
    pub fn substitute(&self, map: &[RatFun]) -> Result<RatFun, AlgebraError> {
        let n = self.num.substitute(map)?;
        let d = self.den.substitute(map)?;
        n.try_div(&d)
    }

    pub fn map_coeffs(&self, f: impl Fn(&CycloNumber) -> CycloNumber + Copy) -> Self {
        RatFun::new(self.num.map_coeffs(f), self.den.map_coeffs(f)).expect("automorphism keeps den nonzero")
    }

    pub fn rebase(&self, target: &Registry) -> Result<Self, AlgebraError> {
        RatFun::new(self.num.rebase(target)?, self.den.rebase(target)?)
    }

    pub fn eval_exact(&self, point: &[CycloNumber]) -> Option<CycloNumber> {
        let d = self.den.eval_exact(point);
        self.num.eval_exact(point).div(&d)
    }
}

/// Equality of rational functions (cross-multiplication).
pub fn ratfun_equal(a: &RatFun, b: &RatFun) -> bool {
    a.equals(b)
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! rat_ops {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl std::ops::$tr<&RatFun> for &RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                self.$inner(rhs).expect("rational function operation failed")
            }
        }
        impl std::ops::$tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$inner(&rhs).expect("rational function operation failed")
            }
        }
    };
}
rat_ops!(Add, add, try_add);
rat_ops!(Sub, sub, try_sub);
rat_ops!(Mul, mul, try_mul);
rat_ops!(Div, div, try_div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_ratfun;

    #[test]
    fn cross_multiplication() {
        let r = Registry::new(&["x", "y", "z"]);
        let a = parse_ratfun("x/y", &r).unwrap();
        let b = parse_ratfun("(x*z)/(y*z)", &r).unwrap();
        assert!(ratfun_equal(&a, &b));
        let a = parse_ratfun("1/(x-1)", &r).unwrap();
        let b = parse_ratfun("1/(x+1)", &r).unwrap();
        assert!(!ratfun_equal(&a, &b));
    }

    #[test]
    fn substitution_homomorphism() {
        let r = Registry::new(&["x", "y"]);
        let f = parse_ratfun("(x^2 + y)/(x - y)", &r).unwrap();
        let g = parse_ratfun("x*y + 1", &r).unwrap();
        let map = vec![parse_ratfun("1/(y+2)", &r).unwrap(), parse_ratfun("x - 3", &r).unwrap()];
        let lhs = (&f * &g).substitute(&map).unwrap();
        let rhs = &f.substitute(&map).unwrap() * &g.substitute(&map).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_denominator_rejected() {
        let r = Registry::new(&["x"]);
        assert!(RatFun::new(MultiPoly::one(&r), MultiPoly::zero(&r)).is_err());
    }

    #[test]
    fn to_poly_divides() {
        let r = Registry::new(&["x", "y"]);
        let f = parse_ratfun("(x^2 - y^2)/(x + y)", &r).unwrap();
        assert_eq!(f.to_poly().unwrap(), crate::algebra::parse_poly("x - y", &r).unwrap());
        let g = parse_ratfun("1/(x + y)", &r).unwrap();
        assert_eq!(g.to_poly(), Err(AlgebraError::NotPolynomial));
    }
}

//! Reader for polynomial and rational-function expressions.
//!
//! Grammar: sums and differences of products and quotients of powers
//! `atom ^ int`, where an atom is an integer, a registry variable, a field
//! constant (see [`CONSTANT_NAMES`]) or a parenthesized expression.

use num_bigint::BigInt;

use super::cyclo::{c, CycloNumber, CONSTANT_NAMES};
use super::poly::{MultiPoly, Registry};
use super::ratfun::RatFun;
use super::AlgebraError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Registry,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFun, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(ch) = self.peek() {
            match ch {
                b'+' => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(ch) = self.peek() {
            match ch {
                b'*' => {
                    self.pos += 1;
                    acc = acc.try_mul(&self.unary()?)?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return self.err("division by zero");
                    }
                    acc = acc.try_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFun, AlgebraError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFun, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.integer()? {
                Some(n) => n,
                None => return self.err("expected integer exponent"),
            };
            let e: i32 = match i32::try_from(e) {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Option<BigInt>, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(Some(s.parse().expect("digit string")))
    }

    fn atom(&mut self) -> Result<RatFun, AlgebraError> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let n = self.integer()?.expect("digit present");
                Ok(RatFun::constant(self.vars, CycloNumber::from_bigint(n)))
            }
            Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                if let Ok(i) = self.vars.index(name) {
                    Ok(RatFun::var(self.vars, i))
                } else if CONSTANT_NAMES.contains(&name) {
                    Ok(RatFun::constant(self.vars, c(name)))
                } else {
                    self.pos = start;
                    Err(AlgebraError::UnknownVariable(name.to_string()))
                }
            }
            Some(_) => self.err("unexpected character"),
        }
    }
}

/// Parses a rational function over `vars`.
pub fn parse_ratfun(src: &str, vars: &Registry) -> Result<RatFun, AlgebraError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
    };
    let r = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(r)
}

/// Parses a polynomial; a quotient that is not a polynomial is an error.
pub fn parse_poly(src: &str, vars: &Registry) -> Result<MultiPoly, AlgebraError> {
    parse_ratfun(src, vars)?.to_poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let r = Registry::new(&["x", "y"]);
        let a = parse_poly("-x^2 + 2*x*y - y^2", &r).unwrap();
        let b = parse_poly("-(x - y)^2", &r).unwrap();
        assert_eq!(a, b);
        let h = parse_poly("3/2*x", &r).unwrap();
        assert_eq!(h, MultiPoly::var(&r, 0).scale(&CycloNumber::frac(3, 2)));
    }

    #[test]
    fn constants_and_errors() {
        let r = Registry::new(&["x"]);
        assert_eq!(parse_poly("i^2", &r).unwrap(), MultiPoly::int(&r, -1));
        assert_eq!(parse_poly("sqrt3*sqrt3", &r).unwrap(), MultiPoly::int(&r, 3));
        assert!(matches!(parse_poly("x + q", &r), Err(AlgebraError::UnknownVariable(_))));
        assert!(matches!(parse_poly("(x + 1", &r), Err(AlgebraError::Parse { .. })));
        assert_eq!(parse_poly("1/x", &r), Err(AlgebraError::NotPolynomial));
    }

    #[test]
    fn negative_exponent() {
        let r = Registry::new(&["x"]);
        let a = parse_ratfun("x^-2", &r).unwrap();
        assert_eq!(a, parse_ratfun("1/(x*x)", &r).unwrap());
    }
}

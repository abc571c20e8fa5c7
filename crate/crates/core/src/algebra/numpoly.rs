//! Polynomials and rational functions with coefficients embedded into a
//! numeric scalar type, for fast repeated evaluation.

use super::mp::Scalar;
use super::poly::MultiPoly;
use super::ratfun::RatFun;

#[derive(Clone, Debug)]
pub struct NumPoly<S: Scalar> {
    nvars: usize,
    terms: Vec<(Vec<u32>, S)>,
    max_exp: Vec<u32>,
}

impl<S: Scalar> NumPoly<S> {
    pub fn new(p: &MultiPoly, prec: usize) -> Self {
        let nvars = p.vars().len();
        let mut max_exp = vec![0u32; nvars];
        let terms = p
            .terms()
            .map(|(m, c)| {
                for (j, &e) in m.0.iter().enumerate() {
                    max_exp[j] = max_exp[j].max(e);
                }
                (m.0.clone(), S::from_cyclo(c, prec))
            })
            .collect();
        NumPoly { nvars, terms, max_exp }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let prec = point.first().map_or(53, |p| p.precision());
        let tables: Vec<Vec<S>> = point
            .iter()
            .zip(&self.max_exp)
            .map(|(x, &m)| {
                let mut t = Vec::with_capacity(m as usize + 1);
                t.push(x.one_like());
                for k in 1..=m as usize {
                    let next = t[k - 1].mul(x);
                    t.push(next);
                }
                t
            })
            .collect();
        let mut acc = S::zero_p(prec);
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&tables[j][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Largest absolute term value at `point`, used to make residuals relative.
    pub fn eval_with_scale(&self, point: &[S]) -> (S, f64) {
        let prec = point.first().map_or(53, |p| p.precision());
        let mut acc = S::zero_p(prec);
        let mut scale = 0f64;
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[j].powi(e));
                }
            }
            scale = scale.max(t.abs_f64());
            acc = acc.add(&t);
        }
        (acc, scale)
    }
}

#[derive(Clone, Debug)]
pub struct NumRatFun<S: Scalar> {
    pub num: NumPoly<S>,
    pub den: NumPoly<S>,
}

impl<S: Scalar> NumRatFun<S> {
    pub fn new(r: &RatFun, prec: usize) -> Self {
        NumRatFun {
            num: NumPoly::new(r.num(), prec),
            den: NumPoly::new(r.den(), prec),
        }
    }

    /// `None` when the denominator vanishes at the point (to f64 resolution).
    pub fn eval(&self, point: &[S]) -> Option<S> {
        let d = self.den.eval(point);
        if d.abs_f64() == 0.0 {
            return None;
        }
        Some(self.num.eval(point).div(&d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, parse_ratfun, MpComplex, Registry};
    use num_complex::Complex64;

    #[test]
    fn matches_exact_evaluation() {
        let r = Registry::new(&["x", "y"]);
        let p = parse_poly("3*x^2*y - i*y^3 + sqrt5", &r).unwrap();
        let n = NumPoly::<Complex64>::new(&p, 53);
        let v = n.eval(&[Complex64::new(0.5, 0.25), Complex64::new(-1.0, 2.0)]);
        let x = Complex64::new(0.5, 0.25);
        let y = Complex64::new(-1.0, 2.0);
        let want = 3.0 * x * x * y - Complex64::i() * y * y * y + 5f64.sqrt();
        assert!((v - want).norm() < 1e-12);
    }

    #[test]
    fn rational_function_and_poles() {
        let r = Registry::new(&["t"]);
        let f = parse_ratfun("1/(t^2 + 1)", &r).unwrap();
        let n = NumRatFun::<MpComplex>::new(&f, 128);
        let at_two = n.eval(&[MpComplex::from_f64(2.0, 0.0, 128)]).unwrap();
        assert!((at_two.to_c64() - Complex64::new(0.2, 0.0)).norm() < 1e-15);
        assert!(n.eval(&[MpComplex::from_f64(0.0, 1.0, 128)]).is_none());
    }
}

//! Iterated derivatives of a rational function along a polynomial field,
//! kept as numerators over powers of one denominator: Δⁿf = N_n / D^{n+1}.

use crate::algebra::{AlgebraError, CycloNumber, MultiPoly, NumPoly, RatFun, Scalar};
use crate::fields::PolyVectorField;

/// Rewrite rule var_i² → rhs applied after every product.
#[derive(Clone, Debug)]
pub struct SquareRule {
    pub var: usize,
    pub rhs: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub num: Vec<MultiPoly>,
    pub den: MultiPoly,
    rules: Vec<SquareRule>,
}

fn reduce(p: MultiPoly, rules: &[SquareRule]) -> MultiPoly {
    rules.iter().fold(p, |acc, r| acc.reduce_square(r.var, &r.rhs))
}

impl Tower {
    /// N_0 = num f, D = den f, N_{n+1} = ΔN_n·D − (n+1)N_n·ΔD, up to N_levels.
    pub fn new(f: &RatFun, delta: &PolyVectorField, levels: usize, rules: &[SquareRule]) -> Result<Tower, AlgebraError> {
        let den = reduce(f.den().clone(), rules);
        let dd = reduce(delta.lie_derivative(&den)?, rules);
        let mut num = vec![reduce(f.num().clone(), rules)];
        for n in 0..levels {
            let last = &num[n];
            let a = reduce(delta.lie_derivative(last)?.try_mul(&den)?, rules);
            let b = reduce(last.try_mul(&dd)?, rules).scale_int(n as i64 + 1);
            num.push(a.try_sub(&b)?);
        }
        Ok(Tower {
            num,
            den,
            rules: rules.to_vec(),
        })
    }

    pub fn levels(&self) -> usize {
        self.num.len() - 1
    }

    /// M_n with Δ'(N_n / D^{n+1}) = M_n / D^{n+2}, for n < `count`.
    pub fn along(&self, other: &PolyVectorField, count: usize) -> Result<Vec<MultiPoly>, AlgebraError> {
        let dd = reduce(other.lie_derivative(&self.den)?, &self.rules);
        (0..count)
            .map(|n| {
                let a = reduce(other.lie_derivative(&self.num[n])?.try_mul(&self.den)?, &self.rules);
                let b = reduce(self.num[n].try_mul(&dd)?, &self.rules).scale_int(n as i64 + 1);
                a.try_sub(&b)
            })
            .collect()
    }

    /// N_3 − (a3 N_0⁴ + a2 N_0²N_1 + a1 N_1² + δ N_0 N_2): the numerator of
    /// Δ³f − RHS(f, Δf, Δ²f) over D⁴.
    pub fn chazy_residual(&self, coeffs: &[CycloNumber; 4]) -> Result<MultiPoly, AlgebraError> {
        let [a1, a2, a3, d] = coeffs;
        let (n0, n1, n2) = (&self.num[0], &self.num[1], &self.num[2]);
        let rr = |p: MultiPoly| reduce(p, &self.rules);
        let n0sq = rr(n0.try_mul(n0)?);
        let mut rhs = rr(n0sq.try_mul(&n0sq)?).scale(a3);
        rhs = rhs.try_add(&rr(n0sq.try_mul(n1)?).scale(a2))?;
        rhs = rhs.try_add(&rr(n1.try_mul(n1)?).scale(a1))?;
        rhs = rhs.try_add(&rr(n0.try_mul(n2)?).scale(d))?;
        self.num[3].try_sub(&rhs)
    }

    /// (Φ, D) numerically: Φ_n = N_n / D^{n+1}.
    pub fn compile<S: Scalar>(&self, prec: usize) -> CompiledTower<S> {
        CompiledTower {
            num: self.num.iter().map(|p| NumPoly::new(p, prec)).collect(),
            den: NumPoly::new(&self.den, prec),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompiledTower<S: Scalar> {
    pub num: Vec<NumPoly<S>>,
    pub den: NumPoly<S>,
}

impl<S: Scalar> CompiledTower<S> {
    /// [Δ⁰f, …, Δ^L f] at the point, `None` at a pole.
    pub fn eval(&self, point: &[S]) -> Option<Vec<S>> {
        let d = self.den.eval(point);
        if d.abs_f64() == 0.0 {
            return None;
        }
        let mut pow = d.clone();
        let mut out = Vec::with_capacity(self.num.len());
        for n in &self.num {
            out.push(n.eval(point).div(&pow));
            pow = pow.mul(&d);
        }
        Some(out)
    }

    pub fn den_value(&self, point: &[S]) -> S {
        self.den.eval(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, parse_ratfun, Registry};

    #[test]
    fn matches_repeated_lie_derivative() {
        let r = Registry::new(&["a", "b"]);
        let d = PolyVectorField::parse(&r, &["b", "a^2"]).unwrap();
        let f = parse_ratfun("(a + b^2)/(1 + a*b)", &r).unwrap();
        let t = Tower::new(&f, &d, 3, &[]).unwrap();
        let mut g = f.clone();
        for n in 0..=3 {
            let den = RatFun::from_poly(t.den.pow(n as u32 + 1));
            let want = RatFun::new(t.num[n].clone(), den.num().clone()).unwrap();
            assert!(g.equals(&want), "level {n}");
            g = d.lie_derivative_rat(&g).unwrap();
        }
    }

    #[test]
    fn reduction_rule_is_applied() {
        let r = Registry::new(&["u", "p"]);
        let d = PolyVectorField::parse(&r, &["p", "-2*u^3"]).unwrap();
        let f = parse_ratfun("u", &r).unwrap();
        let rules = [SquareRule {
            var: 1,
            rhs: parse_poly("1 - u^4", &r).unwrap(),
        }];
        let t = Tower::new(&f, &d, 2, &rules).unwrap();
        assert!(t.num.iter().all(|p| p.degree_in(1) < 2));
        assert_eq!(t.num[2], parse_poly("-2*u^3", &r).unwrap());
    }
}

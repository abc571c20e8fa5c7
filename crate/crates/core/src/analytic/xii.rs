//! Rational solutions of Chazy XII and the SL(2, C) action on solutions.

use super::AnalyticError;
use crate::algebra::{parse_poly, CycloNumber, MultiPoly, NumRatFun, RatFun, Registry, Scalar};
use crate::catalog::xii_polynomial;

/// φ = (k/2 − 3)P'/P together with its first three derivatives.
#[derive(Clone, Debug)]
pub struct Chazy12Solution {
    pub k: i64,
    pub p: MultiPoly,
    pub phi: RatFun,
    pub derivs: [RatFun; 4],
    pub residual: RatFun,
}

impl Chazy12Solution {
    pub fn is_exact(&self) -> bool {
        self.residual.num().is_zero()
    }

    /// (φ, φ', φ'', φ''') at `t`; `None` at a pole.
    pub fn eval<S: Scalar>(&self, t: &S) -> Option<[S; 4]> {
        let prec = t.precision();
        let pt = [t.clone()];
        let mut out = Vec::with_capacity(4);
        for d in &self.derivs {
            out.push(NumRatFun::<S>::new(d, prec).eval(&pt)?);
        }
        out.try_into().ok()
    }
}

pub fn xii_constant(k: i64) -> CycloNumber {
    CycloNumber::frac(4, 36 - k * k)
}

/// φ''' − [2φφ'' − 3φ'² + c(6φ' − φ²)²] with c = 4/(36 − k²).
pub fn xii_residual(k: i64, d: &[RatFun; 4]) -> Result<RatFun, AnalyticError> {
    let c = xii_constant(k);
    let two_pp = d[0].try_mul(&d[2])?.scale(&CycloNumber::from_int(2));
    let sq = d[1].try_mul(&d[1])?.scale(&CycloNumber::from_int(3));
    let inner = d[1].scale(&CycloNumber::from_int(6)).try_sub(&d[0].try_mul(&d[0])?)?;
    let rhs = two_pp.try_sub(&sq)?.try_add(&inner.try_mul(&inner)?.scale(&c))?;
    Ok(d[3].try_sub(&rhs)?)
}

pub fn chazy12_from_polynomial(k: i64, p: &MultiPoly) -> Result<Chazy12Solution, AnalyticError> {
    let r = p.vars().clone();
    let pr = RatFun::from_poly(p.clone());
    let dp = RatFun::from_poly(p.partial(0));
    let phi = dp.try_div(&pr)?.scale(&CycloNumber::frac(k - 6, 2));
    let d1 = phi.partial(0);
    let d2 = d1.partial(0);
    let d3 = d2.partial(0);
    let derivs = [phi.clone(), d1, d2, d3];
    let residual = xii_residual(k, &derivs)?;
    debug_assert_eq!(residual.vars(), &r);
    Ok(Chazy12Solution {
        k,
        p: p.clone(),
        phi,
        derivs,
        residual,
    })
}

/// The tabulated rational solution for k ∈ {2, 3, 4, 5}.
pub fn chazy12_solutions(k: i64) -> Result<Chazy12Solution, AnalyticError> {
    let src = xii_polynomial(k).ok_or_else(|| AnalyticError::Precondition(format!("no tabulated solution for k = {k}")))?;
    let r = Registry::new(&["t"]);
    let p = parse_poly(src, &r)?;
    chazy12_from_polynomial(k, &p)
}

/// Truncated Taylor polynomial c0 + c1 δ + c2 δ² + c3 δ³.
#[derive(Clone, Debug)]
pub struct Jet<S: Scalar>(pub [S; 4]);

impl<S: Scalar> Jet<S> {
    pub fn constant(c: S) -> Self {
        let z = c.zero_like();
        Jet([c, z.clone(), z.clone(), z])
    }

    pub fn variable(t0: S) -> Self {
        let z = t0.zero_like();
        let o = t0.one_like();
        Jet([t0, o, z.clone(), z])
    }

    pub fn add(&self, o: &Self) -> Self {
        Jet(std::array::from_fn(|i| self.0[i].add(&o.0[i])))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Jet(std::array::from_fn(|i| self.0[i].sub(&o.0[i])))
    }

    pub fn scale(&self, c: &S) -> Self {
        Jet(std::array::from_fn(|i| self.0[i].mul(c)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Jet(std::array::from_fn(|n| {
            let mut acc = self.0[0].zero_like();
            for i in 0..=n {
                acc = acc.add(&self.0[i].mul(&o.0[n - i]));
            }
            acc
        }))
    }

    pub fn recip(&self) -> Self {
        let a = &self.0;
        let b0 = a[0].one_like().div(&a[0]);
        let mut b = vec![b0.clone()];
        for n in 1..4 {
            let mut acc = a[0].zero_like();
            for i in 1..=n {
                acc = acc.add(&a[i].mul(&b[n - i]));
            }
            b.push(acc.mul(&b0).neg());
        }
        Jet(b.try_into().expect("four entries"))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    /// f(self) from f, f', f'', f''' at the constant term.
    pub fn compose(&self, f: &[S; 4]) -> Self {
        let mut e = self.clone();
        e.0[0] = e.0[0].zero_like();
        let e2 = e.mul(&e);
        let e3 = e2.mul(&e);
        Jet::constant(f[0].clone())
            .add(&e.scale(&f[1]))
            .add(&e2.scale(&f[2].scale_f64(0.5)))
            .add(&e3.scale(&f[3].div(&S::from_i64_p(6, f[3].precision()))))
    }

    /// (value, first, second, third derivative).
    pub fn derivatives(&self) -> [S; 4] {
        [
            self.0[0].clone(),
            self.0[1].clone(),
            self.0[2].scale_f64(2.0),
            self.0[3].scale_f64(6.0),
        ]
    }
}

/// Largest relative residual of Chazy XII for
/// φ̃(t) = (ct + d)⁻² φ((at + b)/(ct + d)) − 6c/(ct + d) over the samples.
pub fn sl2_orbit_check<S: Scalar, F>(k: i64, m: &[S; 4], base: F, samples: &[S]) -> Result<f64, AnalyticError>
where
    F: Fn(&S) -> Option<[S; 4]>,
{
    let [a, b, c, d] = m;
    let prec = a.precision();
    let kc = S::from_cyclo(&xii_constant(k), prec);
    let mut worst = 0f64;
    for t0 in samples {
        let t = Jet::variable(t0.clone());
        let den = t.scale(c).add(&Jet::constant(d.clone()));
        if den.0[0].abs_f64() == 0.0 {
            return Err(AnalyticError::Pole(t0.to_c64()));
        }
        let s = t.scale(a).add(&Jet::constant(b.clone())).div(&den);
        let fs = base(&s.0[0]).ok_or_else(|| AnalyticError::Pole(t0.to_c64()))?;
        let inv = den.recip();
        let phi = s
            .compose(&fs)
            .mul(&inv.mul(&inv))
            .sub(&inv.scale(&c.scale_f64(6.0)));
        let [p0, p1, p2, p3] = phi.derivatives();
        let inner = p1.scale_f64(6.0).sub(&p0.mul(&p0));
        let terms = [
            p0.mul(&p2).scale_f64(2.0),
            p1.mul(&p1).scale_f64(3.0),
            kc.mul(&inner.mul(&inner)),
        ];
        let rhs = terms[0].sub(&terms[1]).add(&terms[2]);
        let scale = terms.iter().map(|x| x.abs_f64()).fold(p3.abs_f64(), f64::max).max(1.0);
        worst = worst.max(p3.sub(&rhs).abs_f64() / scale);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MpComplex;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tabulated_solutions_are_exact() {
        for k in 2..=5 {
            assert!(chazy12_solutions(k).unwrap().is_exact(), "k={k}");
        }
    }

    #[test]
    fn wrong_polynomial_fails() {
        let r = Registry::new(&["t"]);
        let p = parse_poly("t^4 + t + 3", &r).unwrap();
        assert!(!chazy12_from_polynomial(2, &p).unwrap().is_exact());
        let p = parse_poly("3*t^3 + 3*t + 1", &r).unwrap();
        assert!(!chazy12_from_polynomial(3, &p).unwrap().is_exact());
    }

    #[test]
    fn rescaled_quadratic_is_still_a_solution() {
        // t ↦ λt, φ ↦ λφ(λt) preserves the equation.
        let r = Registry::new(&["t"]);
        let p = parse_poly("t^2 + 2", &r).unwrap();
        assert!(chazy12_from_polynomial(2, &p).unwrap().is_exact());
    }

    #[test]
    fn exact_orbit_of_rational_solution() {
        // a, b, c, d = 2, 1, 1, 1 acting on φ for k = 2, symbolically.
        let sol = chazy12_solutions(2).unwrap();
        let r = Registry::new(&["t"]);
        let t = RatFun::var(&r, 0);
        let one = RatFun::constant(&r, CycloNumber::one());
        let den = t.try_add(&one).unwrap();
        let s = t.scale(&CycloNumber::from_int(2)).try_add(&one).unwrap().try_div(&den).unwrap();
        let phis = sol.phi.num().substitute(&[s.clone()]).unwrap().try_div(&sol.phi.den().substitute(&[s]).unwrap()).unwrap();
        let tilde = phis
            .try_div(&den.try_mul(&den).unwrap())
            .unwrap()
            .try_sub(&RatFun::constant(&r, CycloNumber::from_int(6)).try_div(&den).unwrap())
            .unwrap();
        let d1 = tilde.partial(0);
        let d2 = d1.partial(0);
        let d3 = d2.partial(0);
        assert!(xii_residual(2, &[tilde, d1, d2, d3]).unwrap().num().is_zero());
    }

    #[test]
    fn numeric_orbit_residuals() {
        let sol = chazy12_solutions(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut g = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (a, b, c) = (g(), g(), g());
        let d = (Complex64::new(1.0, 0.0) + b * c) / a;
        let samples: Vec<Complex64> = (0..20).map(|_| g() * 2.0).collect();
        let base = |s: &Complex64| sol.eval(s);
        assert!(sl2_orbit_check(2, &[a, b, c, d], base, &samples).unwrap() < 1e-8);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert!(sl2_orbit_check(2, &[one, zero, zero, one], base, &samples).unwrap() < 1e-12);
        let two = Complex64::new(2.0, 0.0);
        assert!(sl2_orbit_check(2, &[two, zero, one, one], base, &samples).unwrap() > 1e-3);
    }

    #[test]
    fn multiprecision_eval() {
        let sol = chazy12_solutions(5).unwrap();
        let v = sol.eval(&MpComplex::from_f64(0.3, 0.2, 128)).unwrap();
        let w = sol.eval(&Complex64::new(0.3, 0.2)).unwrap();
        assert!((v[0].to_c64() - w[0]).norm() < 1e-10 * w[0].norm());
    }
}

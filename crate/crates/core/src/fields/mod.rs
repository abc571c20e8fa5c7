//! Polynomial vector fields: bracket, Lie derivative, divergence,
//! pushforward identities and exact linear parts.

mod matrix;

pub use matrix::{eigen_analysis, field_roots, solve_linear, EigenReport, FieldMatrix};

use crate::algebra::{AlgebraError, CycloNumber, MultiPoly, RatFun, Registry};

/// A vector field Σ Aᵢ ∂/∂xᵢ over the first `dim` variables of its registry.
///
/// Registry variables past `dim` are parameters: constants for the field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    vars: Registry,
    comps: Vec<MultiPoly>,
}

impl PolyVectorField {
    pub fn new(vars: &Registry, comps: Vec<MultiPoly>) -> Result<Self, AlgebraError> {
        assert!(comps.len() <= vars.len() && !comps.is_empty());
        for c in &comps {
            if c.vars() != vars {
                return Err(AlgebraError::RegistryMismatch(
                    vars.names().to_vec(),
                    c.vars().names().to_vec(),
                ));
            }
        }
        Ok(PolyVectorField {
            vars: vars.clone(),
            comps,
        })
    }

    pub fn parse(vars: &Registry, comps: &[&str]) -> Result<Self, AlgebraError> {
        let polys = comps
            .iter()
            .map(|s| crate::algebra::parse_poly(s, vars))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vars, polys)
    }

    pub fn zero(vars: &Registry, dim: usize) -> Self {
        PolyVectorField {
            vars: vars.clone(),
            comps: vec![MultiPoly::zero(vars); dim],
        }
    }

    /// L = Σ wᵢ xᵢ ∂/∂xᵢ.
    pub fn linear_diagonal(vars: &Registry, weights: &[i64]) -> Self {
        let comps = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| MultiPoly::var(vars, i).scale_int(w))
            .collect();
        PolyVectorField {
            vars: vars.clone(),
            comps,
        }
    }

    /// The Euler-type field x∂x + 2y∂y + 3z∂z on the first three variables.
    pub fn weight_field(vars: &Registry) -> Self {
        Self::linear_diagonal(vars, &[1, 2, 3])
    }

    /// y∂x + z∂y + (a₃x⁴ + a₂x²y + a₁y² + δxz)∂z for coefficients that may
    /// themselves be polynomials in registry parameters.
    pub fn chazy(vars: &Registry, a1: &MultiPoly, a2: &MultiPoly, a3: &MultiPoly, delta: &MultiPoly) -> Self {
        let g = MultiPoly::gens(vars);
        let (x, y, z) = (&g[0], &g[1], &g[2]);
        let rhs = &(&(a3 * &x.pow(4)) + &(a2 * &(&x.pow(2) * y))) + &(&(a1 * &y.pow(2)) + &(delta * &(x * z)));
        PolyVectorField {
            vars: vars.clone(),
            comps: vec![y.clone(), z.clone(), rhs],
        }
    }

    pub fn vars(&self) -> &Registry {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &MultiPoly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.vars != o.vars || self.dim() != o.dim() {
            return Err(AlgebraError::RegistryMismatch(
                self.vars.names().to_vec(),
                o.vars.names().to_vec(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect();
        Ok(PolyVectorField {
            vars: self.vars.clone(),
            comps,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.add(&o.scale(&CycloNumber::from_int(-1)))
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        PolyVectorField {
            vars: self.vars.clone(),
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> Self {
        PolyVectorField {
            vars: self.vars.clone(),
            comps: self.comps.iter().map(|q| q * p).collect(),
        }
    }

    /// A·f = Σ Aᵢ ∂f/∂xᵢ.
    pub fn lie_derivative(&self, f: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        if f.vars() != &self.vars {
            return Err(AlgebraError::RegistryMismatch(
                self.vars.names().to_vec(),
                f.vars().names().to_vec(),
            ));
        }
        let mut acc = MultiPoly::zero(&self.vars);
        for (i, a) in self.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                acc = &acc + &(a * &d);
            }
        }
        Ok(acc)
    }

    /// Lie derivative of a rational function by the quotient rule.
    pub fn lie_derivative_rat(&self, f: &RatFun) -> Result<RatFun, AlgebraError> {
        let dn = self.lie_derivative(f.num())?;
        if f.den().as_constant().is_some() {
            return RatFun::new(dn, f.den().clone());
        }
        let dd = self.lie_derivative(f.den())?;
        let num = &(&dn * f.den()) - &(f.num() * &dd);
        RatFun::new(num, f.den() * f.den())
    }

    /// [A,B]ᵢ = Σⱼ Aⱼ ∂ⱼBᵢ − Bⱼ ∂ⱼAᵢ.
    pub fn bracket(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        let mut comps = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let c = &self.lie_derivative(&o.comps[i])? - &o.lie_derivative(&self.comps[i])?;
            comps.push(c);
        }
        Ok(PolyVectorField {
            vars: self.vars.clone(),
            comps,
        })
    }

    pub fn divergence(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero(&self.vars);
        for (i, a) in self.comps.iter().enumerate() {
            acc = &acc + &a.partial(i);
        }
        acc
    }

    /// Jacobian (∂Aᵢ/∂xⱼ) at an exact point; parameters, if present, must
    /// be included in `point`.
    pub fn linear_part(&self, point: &[CycloNumber]) -> FieldMatrix {
        let full = self.pad_point(point);
        let n = self.dim();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let row = (0..n).map(|j| self.comps[i].partial(j).eval_exact(&full)).collect();
            rows.push(row);
        }
        FieldMatrix::new(rows)
    }

    /// Evaluates the field at an exact point.
    pub fn eval_exact(&self, point: &[CycloNumber]) -> Vec<CycloNumber> {
        let full = self.pad_point(point);
        self.comps.iter().map(|c| c.eval_exact(&full)).collect()
    }

    fn pad_point(&self, point: &[CycloNumber]) -> Vec<CycloNumber> {
        assert!(point.len() >= self.dim() && point.len() <= self.vars.len());
        let mut full = point.to_vec();
        full.resize(self.vars.len(), CycloNumber::zero());
        full
    }

    pub fn map_coeffs(&self, f: impl Fn(&CycloNumber) -> CycloNumber + Copy) -> Self {
        PolyVectorField {
            vars: self.vars.clone(),
            comps: self.comps.iter().map(|p| p.map_coeffs(f)).collect(),
        }
    }

    /// Components composed with a polynomial map (one entry per registry variable).
    pub fn compose(&self, map: &[MultiPoly]) -> Result<Vec<MultiPoly>, AlgebraError> {
        self.comps.iter().map(|c| c.compose(map)).collect()
    }

    pub fn to_canonical_strings(&self) -> Vec<String> {
        self.comps.iter().map(|c| c.to_canonical_string()).collect()
    }
}

/// Outcome of [`pushforward_check`].
#[derive(Clone, Debug)]
pub struct PushforwardResult {
    pub passed: bool,
    /// Index of the first failing component with its cross-multiplied residual.
    pub failure: Option<(usize, MultiPoly)>,
}

/// Checks DS·A = c·(B∘S) componentwise as rational-function identities.
///
/// `map` holds the components of S as rational functions on A's registry;
/// `B` lives on its own registry, with one variable per entry of `map` plus
/// any shared parameters (matched by name).
pub fn pushforward_check(
    map: &[RatFun],
    a: &PolyVectorField,
    b: &PolyVectorField,
    c: &CycloNumber,
) -> Result<PushforwardResult, AlgebraError> {
    if map.iter().all(|s| s.num().is_zero()) {
        return Err(AlgebraError::DivisionByZero);
    }
    let src = a.vars();
    let mut subst: Vec<RatFun> = Vec::with_capacity(b.vars().len());
    for (j, name) in b.vars().names().iter().enumerate() {
        if j < map.len() {
            subst.push(map[j].clone());
        } else {
            let i = src.index(name)?;
            subst.push(RatFun::var(src, i));
        }
    }
    for (j, s) in map.iter().enumerate().take(b.dim()) {
        let lhs = a.lie_derivative_rat(s)?;
        let rhs = b.component(j).substitute(&subst)?.scale(c);
        let resid = &(lhs.num() * rhs.den()) - &(rhs.num() * lhs.den());
        if !resid.is_zero() {
            return Ok(PushforwardResult {
                passed: false,
                failure: Some((j, resid)),
            });
        }
    }
    Ok(PushforwardResult {
        passed: true,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn reg() -> Registry {
        Registry::new(&["x", "y", "z"])
    }

    fn chazy_int(r: &Registry, a: [i64; 4]) -> PolyVectorField {
        let k = |n| MultiPoly::int(r, n);
        PolyVectorField::chazy(r, &k(a[0]), &k(a[1]), &k(a[2]), &k(a[3]))
    }

    #[test]
    fn quasihomogeneity_of_chazy_ii() {
        let r = reg();
        let l = PolyVectorField::weight_field(&r);
        let v = chazy_int(&r, [2, 0, 0, 2]);
        assert_eq!(l.bracket(&v).unwrap(), v);
        assert!(l.bracket(&l).unwrap().is_zero());
        assert_eq!(l.divergence(), MultiPoly::int(&r, 6));
    }

    #[test]
    fn chazy_iv_first_integral() {
        let r = reg();
        let v = chazy_int(&r, [3, -3, 0, 3]);
        let q = parse_poly("x^3 - 3*y*x + z", &r).unwrap();
        assert!(v.lie_derivative(&q).unwrap().is_zero());
        let l = PolyVectorField::weight_field(&r);
        assert_eq!(l.lie_derivative(&q).unwrap(), q.scale_int(3));
        assert!(v.lie_derivative(&MultiPoly::int(&r, 7)).unwrap().is_zero());
    }

    #[test]
    fn chazy_ii_change_of_variables() {
        let r = reg();
        let v = chazy_int(&r, [2, 0, 0, 2]);
        let map: Vec<RatFun> = ["x", "y - x^2", "z - 2*x*y"]
            .iter()
            .map(|s| RatFun::from_poly(parse_poly(s, &r).unwrap()))
            .collect();
        let t = Registry::new(&["X", "Y", "Z"]);
        let b = PolyVectorField::parse(&t, &["X^2 + Y", "Z", "0"]).unwrap();
        assert!(pushforward_check(&map, &v, &b, &CycloNumber::one()).unwrap().passed);
        let wrong = PolyVectorField::parse(&t, &["X^2 - Y", "Z", "0"]).unwrap();
        let res = pushforward_check(&map, &v, &wrong, &CycloNumber::one()).unwrap();
        assert!(!res.passed && res.failure.unwrap().0 == 0);
    }

    #[test]
    fn linear_part_of_weight_field() {
        let r = reg();
        let l = PolyVectorField::weight_field(&r);
        let m = l.linear_part(&[CycloNumber::zero(), CycloNumber::zero(), CycloNumber::zero()]);
        assert_eq!(m, FieldMatrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]));
    }
}

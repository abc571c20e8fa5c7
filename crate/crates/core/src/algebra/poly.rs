//! Sparse multivariate polynomials over Q(ζ₆₀) in graded-lex order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::cyclo::CycloNumber;
use super::ratfun::RatFun;
use super::rational::Rational;
use super::AlgebraError;

/// An ordered list of variable names shared by polynomials that interact.
#[derive(Clone)]
pub struct Registry(Arc<Vec<String>>);

impl Registry {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Registry(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    /// This registry with further names appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Self {
        let mut v: Vec<String> = self.0.as_ref().clone();
        for e in extra {
            if !v.iter().any(|n| n == e.as_ref()) {
                v.push(e.as_ref().to_string());
            }
        }
        Registry(Arc::new(v))
    }
}

impl PartialEq for Registry {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Registry {}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn weight(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Registry,
    terms: BTreeMap<Monomial, CycloNumber>,
}

/// Outcome of [`MultiPoly::weighted_degree`].
#[derive(Clone, Debug, PartialEq)]
pub enum WeightedDegree {
    Zero,
    Homogeneous(i64),
    NonHomogeneous { first: Monomial, second: Monomial },
}

impl MultiPoly {
    pub fn zero(vars: &Registry) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Registry, c: CycloNumber) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &Registry) -> Self {
        Self::constant(vars, CycloNumber::one())
    }

    pub fn int(vars: &Registry, n: i64) -> Self {
        Self::constant(vars, CycloNumber::from_int(n))
    }

    pub fn var(vars: &Registry, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::from_terms(vars, vec![(Monomial(e), CycloNumber::one())])
    }

    pub fn var_named(vars: &Registry, name: &str) -> Result<Self, AlgebraError> {
        Ok(Self::var(vars, vars.index(name)?))
    }

    /// The variables of `vars` as polynomials, in registry order.
    pub fn gens(vars: &Registry) -> Vec<Self> {
        (0..vars.len()).map(|i| Self::var(vars, i)).collect()
    }

    pub fn monomial(vars: &Registry, exps: &[u32], c: CycloNumber) -> Self {
        assert_eq!(exps.len(), vars.len());
        Self::from_terms(vars, vec![(Monomial(exps.to_vec()), c)])
    }

    pub fn from_terms(vars: &Registry, terms: impl IntoIterator<Item = (Monomial, CycloNumber)>) -> Self {
        let mut map: BTreeMap<Monomial, CycloNumber> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len());
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(e) => {
                    *e = &*e + &c;
                    if e.is_zero() {
                        map.remove(&m);
                    }
                }
                None => {
                    map.insert(m, c);
                }
            }
        }
        MultiPoly {
            vars: vars.clone(),
            terms: map,
        }
    }

    pub fn vars(&self) -> &Registry {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycloNumber)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> CycloNumber {
        self.terms.get(m).cloned().unwrap_or_else(CycloNumber::zero)
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<CycloNumber> {
        match self.terms.len() {
            0 => Some(CycloNumber::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.degree() == 0 {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &CycloNumber)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgebraError::RegistryMismatch(
                self.vars.names().to_vec(),
                other.vars.names().to_vec(),
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(e) => {
                    *e = &*e + c;
                    if e.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        if let Some(c) = other.as_constant() {
            return Ok(self.scale(&c));
        }
        if let Some(c) = self.as_constant() {
            return Ok(other.scale(&c));
        }
        let mut acc: HashMap<Monomial, CycloNumber> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let prod = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e = &*e + &prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&CycloNumber::from_int(n))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&CycloNumber::from_rational(r))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// ∂/∂x_i.
    pub fn partial(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c.scale_int(k as i64))
        });
        Self::from_terms(&self.vars, terms.collect::<Vec<_>>())
    }

    pub fn partial_named(&self, name: &str) -> Result<Self, AlgebraError> {
        Ok(self.partial(self.vars.index(name)?))
    }

    /// Applies a coefficient map (e.g. a Galois automorphism) termwise.
    pub fn map_coeffs(&self, f: impl Fn(&CycloNumber) -> CycloNumber) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect::<Vec<_>>(),
        )
    }

    /// Re-expresses the polynomial over another registry containing all of
    /// this polynomial's variables that actually occur.
    pub fn rebase(&self, target: &Registry) -> Result<Self, AlgebraError> {
        let idx: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index(n).ok())
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match idx[i] {
                    Some(j) => e[j] = k,
                    None => {
                        return Err(AlgebraError::UnknownVariable(self.vars.name(i).to_string()))
                    }
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Polynomial composition: variable `i` is replaced by `map[i]`.
    pub fn compose(&self, map: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
        assert_eq!(map.len(), self.vars.len());
        let target = map
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        for p in map {
            if p.vars != target {
                return Err(AlgebraError::RegistryMismatch(
                    target.names().to_vec(),
                    p.vars.names().to_vec(),
                ));
            }
        }
        let mut cache: Vec<Vec<MultiPoly>> = map.iter().map(|p| vec![MultiPoly::one(&target), p.clone()]).collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &cache[i][1];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitution of rational functions for the variables; the result has
    /// a single denominator Π d_i^{E_i} with E_i the degree in variable i.
    pub fn substitute(&self, map: &[RatFun]) -> Result<RatFun, AlgebraError> {
        assert_eq!(map.len(), self.vars.len());
        let target = map
            .first()
            .map(|r| r.vars().clone())
            .unwrap_or_else(|| self.vars.clone());
        let max_e: Vec<u32> = (0..self.vars.len()).map(|i| self.degree_in(i)).collect();
        let nums: Vec<MultiPoly> = map.iter().map(|r| r.num().clone()).collect();
        let dens: Vec<MultiPoly> = map.iter().map(|r| r.den().clone()).collect();
        let trivial: Vec<bool> = dens.iter().map(|d| d.as_constant().is_some_and(|c| c.is_one())).collect();
        let mut npow: Vec<Vec<MultiPoly>> = nums.iter().map(|p| vec![MultiPoly::one(&target), p.clone()]).collect();
        let mut dpow: Vec<Vec<MultiPoly>> = dens.iter().map(|p| vec![MultiPoly::one(&target), p.clone()]).collect();
        let grab = |cache: &mut Vec<MultiPoly>, e: usize| -> MultiPoly {
            while cache.len() <= e {
                let next = &cache[cache.len() - 1] * &cache[1];
                cache.push(next);
            }
            cache[e].clone()
        };
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for i in 0..m.0.len() {
                let e = m.0[i] as usize;
                if e > 0 {
                    t = &t * &grab(&mut npow[i], e);
                }
                if !trivial[i] {
                    let rest = (max_e[i] as usize) - e;
                    if rest > 0 {
                        t = &t * &grab(&mut dpow[i], rest);
                    }
                }
            }
            out = &out + &t;
        }
        let mut den = MultiPoly::one(&target);
        for i in 0..self.vars.len() {
            if !trivial[i] && max_e[i] > 0 {
                den = &den * &grab(&mut dpow[i], max_e[i] as usize);
            }
        }
        RatFun::new(out, den)
    }

    /// Weighted degree under per-variable integer weights.
    pub fn weighted_degree(&self, weights: &[i64]) -> WeightedDegree {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m,
            None => return WeightedDegree::Zero,
        };
        let w = first.weight(weights);
        for m in it {
            if m.weight(weights) != w {
                return WeightedDegree::NonHomogeneous {
                    first: first.clone(),
                    second: m.clone(),
                };
            }
        }
        WeightedDegree::Homogeneous(w)
    }

    /// Long division by `b` in graded-lex order: returns (quotient, remainder)
    /// with no remainder term divisible by the leading monomial of `b`.
    pub fn divrem(&self, b: &MultiPoly) -> Result<(MultiPoly, MultiPoly), AlgebraError> {
        self.check(b)?;
        let (lm, lc) = match b.leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(AlgebraError::DivisionByZero),
        };
        let lc_inv = lc.inv().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        let mut out_rem = MultiPoly::zero(&self.vars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = m.div(&lm);
                let qc = &c * &lc_inv;
                let t = MultiPoly::from_terms(&self.vars, vec![(qm, qc)]);
                rem = &rem - &(&t * b);
                quot = &quot + &t;
            } else {
                rem.terms.remove(&m);
                out_rem.terms.insert(m, c);
            }
        }
        Ok((quot, out_rem))
    }

    /// Exact division; `Err(remainder)` when `b` does not divide `self`.
    pub fn exact_divide(&self, b: &MultiPoly) -> Result<Result<MultiPoly, MultiPoly>, AlgebraError> {
        let (q, r) = self.divrem(b)?;
        Ok(if r.is_zero() { Ok(q) } else { Err(r) })
    }

    /// Rewrites monomials using a rule `x_i^2 -> rhs` repeatedly (rhs free of x_i^2).
    pub fn reduce_square(&self, i: usize, rhs: &MultiPoly) -> MultiPoly {
        let mut pending: Vec<(Monomial, CycloNumber)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut done: Vec<(Monomial, CycloNumber)> = Vec::new();
        let mut rhs_pows: Vec<MultiPoly> = vec![MultiPoly::one(&self.vars), rhs.clone()];
        while let Some((m, c)) = pending.pop() {
            let e = m.0[i];
            if e < 2 {
                done.push((m, c));
                continue;
            }
            let k = (e / 2) as usize;
            while rhs_pows.len() <= k {
                let next = &rhs_pows[rhs_pows.len() - 1] * rhs;
                rhs_pows.push(next);
            }
            let mut base = m.0.clone();
            base[i] = e % 2;
            for (rm, rc) in rhs_pows[k].terms() {
                let nm = Monomial(base.clone()).mul(rm);
                let nc = &c * rc;
                if nm.0[i] >= 2 {
                    pending.push((nm, nc));
                } else {
                    done.push((nm, nc));
                }
            }
        }
        MultiPoly::from_terms(&self.vars, done)
    }

    /// Evaluates at exact field values.
    pub fn eval_exact(&self, point: &[CycloNumber]) -> CycloNumber {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = CycloNumber::zero();
        let mut pows: Vec<Vec<CycloNumber>> = point.iter().map(|p| vec![CycloNumber::one(), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[i].len() <= e as usize {
                    let n = &pows[i][pows[i].len() - 1] * &point[i];
                    pows[i].push(n);
                }
                t = &t * &pows[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Canonical string "coeff*x^a*y^b + …", terms in descending order.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut s = c.to_string();
                for (i, &e) in m.0.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => {
                            s.push('*');
                            s.push_str(self.vars.name(i));
                        }
                        _ => {
                            s.push_str(&format!("*{}^{}", self.vars.name(i), e));
                        }
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

macro_rules! poly_ops {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$inner(rhs).expect("polynomial registry mismatch")
            }
        }
        impl std::ops::$tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$inner(&rhs).expect("polynomial registry mismatch")
            }
        }
        impl std::ops::$tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$inner(rhs).expect("polynomial registry mismatch")
            }
        }
        impl std::ops::$tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$inner(&rhs).expect("polynomial registry mismatch")
            }
        }
    };
}
poly_ops!(Add, add, try_add);
poly_ops!(Sub, sub, try_sub);
poly_ops!(Mul, mul, try_mul);

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(&self)
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclo::c;
    use crate::algebra::parse::parse_poly;

    fn xyz() -> Registry {
        Registry::new(&["x", "y", "z"])
    }

    #[test]
    fn derivative_example() {
        let r = xyz();
        let p = parse_poly("x^3 - 3*y*x + z", &r).unwrap();
        assert_eq!(p.partial(0), parse_poly("3*x^2 - 3*y", &r).unwrap());
    }

    #[test]
    fn gaussian_product() {
        let r = xyz();
        let a = parse_poly("x + i*y", &r).unwrap();
        let b = parse_poly("x - i*y", &r).unwrap();
        assert_eq!(&a * &b, parse_poly("x^2 + y^2", &r).unwrap());
    }

    #[test]
    fn chart_substitution() {
        let r = xyz();
        let q = parse_poly("x^3 - 3*y*x + z", &r).unwrap();
        let g = MultiPoly::gens(&r);
        let chart = parse_poly("1 + 3*x*y - x^3", &r).unwrap();
        let out = q.compose(&[g[0].clone(), g[1].clone(), chart]).unwrap();
        assert_eq!(out, MultiPoly::one(&r));
    }

    #[test]
    fn division_examples() {
        let r = xyz();
        let a = parse_poly("x^2 - y^2", &r).unwrap();
        let b = parse_poly("x - y", &r).unwrap();
        assert_eq!(a.exact_divide(&b).unwrap(), Ok(parse_poly("x + y", &r).unwrap()));
        let a = parse_poly("x^2", &r).unwrap();
        let b = parse_poly("x + 1", &r).unwrap();
        assert_eq!(a.exact_divide(&b).unwrap(), Err(MultiPoly::one(&r)));
        assert!(a.exact_divide(&MultiPoly::zero(&r)).is_err());
    }

    #[test]
    fn weighted_degrees() {
        let r = xyz();
        let q = parse_poly("x^3 - 3*y*x + z", &r).unwrap();
        assert_eq!(q.weighted_degree(&[1, 2, 3]), WeightedDegree::Homogeneous(3));
        let p = parse_poly("x + y", &r).unwrap();
        assert!(matches!(p.weighted_degree(&[1, 2, 3]), WeightedDegree::NonHomogeneous { .. }));
    }

    #[test]
    fn canonical_string_roundtrip() {
        let r = xyz();
        let p = parse_poly("(1 + sqrt3)*x^2*z - 3/2*y + i", &r).unwrap();
        let s = p.to_canonical_string();
        assert_eq!(parse_poly(&s, &r).unwrap(), p);
        assert_eq!(MultiPoly::zero(&r).to_canonical_string(), "0");
        let _ = c("i");
    }

    #[test]
    fn square_reduction() {
        let r = Registry::new(&["u", "p"]);
        let p = parse_poly("p^3 + u*p^2", &r).unwrap();
        let rhs = parse_poly("1 - u^4", &r).unwrap();
        let red = p.reduce_square(1, &rhs);
        assert_eq!(red, parse_poly("p - u^4*p + u - u^5", &r).unwrap());
    }
}

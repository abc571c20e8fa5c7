//! Dense univariate polynomials over a field.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{divisors, lcm_denoms, Rational};
use super::FieldElem;

/// Coefficients from the constant term upwards, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<T: FieldElem> {
    coeffs: Vec<T>,
}

impl<T: FieldElem> UPoly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = UPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// x - r.
    pub fn linear(r: &T) -> Self {
        Self::new(vec![r.neg(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> T {
        self.coeffs.get(j).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j).add(&o.coeff(j))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j).sub(&o.coeff(j))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.mul(&T::from_i64(j as i64)))
                .collect(),
        )
    }

    pub fn divrem(&self, b: &Self) -> Option<(Self, Self)> {
        let db = b.degree()?;
        let lc_inv = b.leading()?.inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![T::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db].mul(&lc_inv);
            if !c.is_zero() {
                for (j, bc) in b.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&c.mul(bc));
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Some((Self::new(q), Self::new(r)))
    }

    pub fn monic(&self) -> Self {
        match self.leading().and_then(|l| l.inv()) {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of r as a root.
    pub fn root_multiplicity(&self, r: &T) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear(r);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (qt, rem) = p.divrem(&lin).expect("monic divisor");
            if !rem.is_zero() {
                return m;
            }
            m += 1;
            p = qt;
        }
    }
}

impl UPoly<Rational> {
    /// All rational roots, by the rational root theorem.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = lcm_denoms(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let mut out = Vec::new();
        if shift > 0 {
            out.push(<Rational as FieldElem>::zero());
        }
        let a0 = ints[shift].abs();
        let an = ints.last().unwrap().abs();
        if ints.len() - shift <= 1 {
            return out;
        }
        for p in divisors(&a0) {
            for qd in divisors(&an) {
                for s in [BigInt::one(), -BigInt::one()] {
                    let r = Rational::new(&s * &p, qd.clone());
                    if !out.contains(&r) && FieldElem::is_zero(&self.eval(&r)) {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

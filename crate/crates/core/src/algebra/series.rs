//! Truncated power series in one variable over a field.

use std::fmt;

use super::FieldElem;

/// Σ c_j t^j mod t^order.
#[derive(Clone, PartialEq)]
pub struct PowerSeries<T: FieldElem> {
    var: String,
    coeffs: Vec<T>,
    order: usize,
}

impl<T: FieldElem> PowerSeries<T> {
    pub fn new(var: &str, coeffs: Vec<T>, order: usize) -> Self {
        let mut coeffs = coeffs;
        coeffs.truncate(order);
        coeffs.resize(order, T::zero());
        PowerSeries {
            var: var.to_string(),
            coeffs,
            order,
        }
    }

    pub fn zero(var: &str, order: usize) -> Self {
        Self::new(var, Vec::new(), order)
    }

    pub fn one(var: &str, order: usize) -> Self {
        Self::new(var, vec![T::one()], order)
    }

    /// The series t.
    pub fn gen(var: &str, order: usize) -> Self {
        Self::new(var, vec![T::zero(), T::one()], order)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> T {
        self.coeffs.get(j).cloned().unwrap_or_else(T::zero)
    }

    pub fn set_coeff(&mut self, j: usize, c: T) {
        if j < self.order {
            self.coeffs[j] = c;
        }
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(&self.var, self.coeffs.clone(), order.min(self.order))
    }

    fn common(&self, o: &Self) -> usize {
        self.order.min(o.order)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.common(o);
        Self::new(&self.var, (0..n).map(|j| self.coeffs[j].add(&o.coeffs[j])).collect(), n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.common(o);
        Self::new(&self.var, (0..n).map(|j| self.coeffs[j].sub(&o.coeffs[j])).collect(), n)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|c| c.neg()).collect(), self.order)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|x| x.mul(c)).collect(), self.order)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.common(o);
        let mut out = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(&self.var, out, n)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.var, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Option<Self> {
        let c0inv = self.coeffs.first()?.inv()?;
        let n = self.order;
        let mut out = vec![T::zero(); n];
        out[0] = c0inv.clone();
        for k in 1..n {
            let mut s = T::zero();
            for j in 1..=k {
                s = s.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = s.neg().mul(&c0inv);
        }
        Some(Self::new(&self.var, out, n))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    /// d/dt; the result loses one order of precision.
    pub fn derivative(&self) -> Self {
        let n = self.order.saturating_sub(1);
        let c = (0..n)
            .map(|j| self.coeffs[j + 1].mul(&T::from_i64(j as i64 + 1)))
            .collect();
        Self::new(&self.var, c, n)
    }

    /// Antiderivative with zero constant term; gains one order.
    pub fn integral(&self) -> Self {
        let mut c = vec![T::zero()];
        for (j, a) in self.coeffs.iter().enumerate() {
            c.push(a.div(&T::from_i64(j as i64 + 1)).expect("characteristic zero"));
        }
        Self::new(&self.var, c, self.order + 1)
    }

    /// Composition self(g) for g with zero constant term.
    pub fn compose(&self, g: &Self) -> Option<Self> {
        if !g.coeff(0).is_zero() {
            return None;
        }
        let n = self.common(g);
        let mut acc = Self::zero(&self.var, n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(g).add(&Self::new(&self.var, vec![c.clone()], n));
        }
        Some(acc)
    }

    /// f(t^k), order scaled accordingly.
    pub fn substitute_power(&self, k: usize) -> Self {
        let n = self.order * k;
        let mut c = vec![T::zero(); n];
        for (j, a) in self.coeffs.iter().enumerate() {
            c[j * k] = a.clone();
        }
        Self::new(&self.var, c, n)
    }

    /// Multiplies by t^k.
    pub fn shift(&self, k: usize) -> Self {
        let mut c = vec![T::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(&self.var, c, self.order + k)
    }
}

impl<T: FieldElem + fmt::Display> fmt::Display for PowerSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{j}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order)
    }
}

impl<T: FieldElem> fmt::Debug for PowerSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries({:?} mod {}^{})", self.coeffs, self.var, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qi, Rational};

    #[test]
    fn geometric_inverse() {
        let one_minus_t = PowerSeries::<Rational>::new("t", vec![qi(1), qi(-1)], 8);
        let inv = one_minus_t.inv().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == qi(1)));
        assert_eq!(inv.order(), 8);
    }

    #[test]
    fn exp_derivative() {
        let mut c = vec![qi(1)];
        let mut f = qi(1);
        for j in 1..10 {
            f = f / qi(j);
            c.push(f.clone());
        }
        let e = PowerSeries::new("t", c, 10);
        assert_eq!(e.derivative(), e.truncate(9));
        assert_eq!(e.derivative().integral().coeff(3), q(1, 6));
    }

    #[test]
    fn composition_with_shift() {
        let t = PowerSeries::<Rational>::gen("t", 6);
        let sq = t.mul(&t);
        let one_plus = PowerSeries::new("t", vec![qi(1), qi(1)], 6);
        let c = one_plus.compose(&sq).unwrap();
        assert_eq!(c.coeff(2), qi(1));
        assert_eq!(t.substitute_power(3).coeff(3), qi(1));
    }
}

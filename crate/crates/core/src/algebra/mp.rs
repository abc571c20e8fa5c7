//! Configurable-precision complex floats and the embedding of Q(ζ₆₀) into C.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use dashu_base::{Abs, Sign, SquareRoot};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::BigInt;
use num_complex::Complex64;

use super::cyclo::{CycloNumber, CONDUCTOR, DEGREE};
use super::rational::Rational;

/// Binary multiprecision float with round-half-even.
pub type MpFloat = FBig<HalfEven, 2>;

const GUARD_BITS: usize = 24;

pub fn mp_int(n: i64, prec: usize) -> MpFloat {
    MpFloat::from(n).with_precision(prec).value()
}

pub fn mp_f64(x: f64, prec: usize) -> MpFloat {
    MpFloat::try_from(x).expect("finite f64").with_precision(prec).value()
}

pub fn mp_bigint(n: &BigInt, prec: usize) -> MpFloat {
    let (sign, bytes) = n.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    let s = if sign == num_bigint::Sign::Minus { Sign::Negative } else { Sign::Positive };
    MpFloat::from(IBig::from_parts(s, mag)).with_precision(prec).value()
}

pub fn mp_rational(r: &Rational, prec: usize) -> MpFloat {
    mp_bigint(r.numer(), prec) / mp_bigint(r.denom(), prec)
}

pub fn mp_to_f64(x: &MpFloat) -> f64 {
    x.to_f64().value()
}

pub fn mp_pi(prec: usize) -> MpFloat {
    MpFloat::pi(prec)
}

#[derive(Clone, PartialEq)]
pub struct MpComplex {
    pub re: MpFloat,
    pub im: MpFloat,
}

impl MpComplex {
    pub fn new(re: MpFloat, im: MpFloat) -> Self {
        MpComplex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        MpComplex::new(mp_int(0, prec), mp_int(0, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        MpComplex::new(mp_f64(re, prec), mp_f64(im, prec))
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        MpComplex::new(
            self.re.clone().with_precision(prec).value(),
            self.im.clone().with_precision(prec).value(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        MpComplex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        MpComplex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        MpComplex::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        MpComplex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, r: &MpFloat) -> Self {
        MpComplex::new(&self.re * r, &self.im * r)
    }

    pub fn norm_sqr(&self) -> MpFloat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> MpFloat {
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        MpComplex::new(
            (&self.re * &o.re + &self.im * &o.im) / &d,
            (&self.im * &o.re - &self.re * &o.im) / &d,
        )
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.precision();
        if self.re.repr().is_zero() && self.im.repr().is_zero() {
            return MpComplex::zero(prec);
        }
        let r = self.abs();
        let two = mp_int(2, prec);
        if self.re.sign() != Sign::Negative {
            let a = ((&r + &self.re) / &two).sqrt();
            let b = &self.im / (&two * &a);
            MpComplex::new(a, b)
        } else {
            let mut b = ((&r - &self.re) / &two).sqrt();
            if self.im.sign() == Sign::Negative {
                b = -b;
            }
            let a = &self.im / (&two * &b);
            MpComplex::new(a, b)
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(mp_to_f64(&self.re), mp_to_f64(&self.im))
    }

    /// exp(iθ).
    pub fn cis(theta: &MpFloat) -> Self {
        let (s, c) = theta.sin_cos();
        MpComplex::new(c, s)
    }
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_c64();
        write!(f, "{} + {}i", z.re, z.im)
    }
}

fn zeta_table(prec: usize) -> Arc<Vec<MpComplex>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<MpComplex>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("zeta cache").get(&prec) {
        return t.clone();
    }
    let work = prec + GUARD_BITS;
    let two_pi = mp_pi(work) * mp_int(2, work);
    let table: Vec<MpComplex> = (0..DEGREE)
        .map(|j| {
            let theta = &two_pi * mp_int(j as i64, work) / mp_int(CONDUCTOR as i64, work);
            MpComplex::cis(&theta).with_precision(prec)
        })
        .collect();
    let table = Arc::new(table);
    cache.lock().expect("zeta cache").insert(prec, table.clone());
    table
}

/// Image of `c` under ζ₆₀ ↦ exp(2πi/60), computed with `precision` bits.
pub fn embed_complex(c: &CycloNumber, precision: usize) -> MpComplex {
    let precision = precision.max(53);
    let work = precision + GUARD_BITS;
    let table = zeta_table(work);
    let mut acc = MpComplex::zero(work);
    for (j, n) in c.numerators().iter().enumerate() {
        if n.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        acc = acc.add(&table[j].scale(&mp_bigint(n, work)));
    }
    acc.scale(&(mp_int(1, work) / mp_bigint(c.denominator(), work)))
        .with_precision(precision)
}

pub fn embed_c64(c: &CycloNumber) -> Complex64 {
    if let Some(r) = c.to_rational() {
        return Complex64::new(mp_to_f64(&mp_rational(&r, 64)), 0.0);
    }
    embed_complex(c, 64).to_c64()
}

/// Complex scalars used by the numerical code: `Complex64` or `MpComplex`.
pub trait Scalar: Clone + fmt::Debug + Send + Sync + 'static {
    fn zero_p(prec: usize) -> Self;
    fn from_f64_p(re: f64, im: f64, prec: usize) -> Self;
    fn from_cyclo(c: &CycloNumber, prec: usize) -> Self;
    fn precision(&self) -> usize;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale_f64(&self, x: f64) -> Self;
    fn sqrt(&self) -> Self;
    fn abs_f64(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    fn from_mp(z: &MpComplex, prec: usize) -> Self;

    fn from_i64_p(n: i64, prec: usize) -> Self {
        Self::from_f64_p(n as f64, 0.0, prec)
    }
    fn zero_like(&self) -> Self {
        Self::zero_p(self.precision())
    }
    fn one_like(&self) -> Self {
        Self::from_f64_p(1.0, 0.0, self.precision())
    }
    fn powi(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }
}

impl Scalar for Complex64 {
    fn zero_p(_: usize) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_f64_p(re: f64, im: f64, _: usize) -> Self {
        Complex64::new(re, im)
    }
    fn from_cyclo(c: &CycloNumber, _: usize) -> Self {
        embed_c64(c)
    }
    fn precision(&self) -> usize {
        53
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
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale_f64(&self, x: f64) -> Self {
        self * x
    }
    fn sqrt(&self) -> Self {
        Complex64::sqrt(*self)
    }
    fn abs_f64(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn from_mp(z: &MpComplex, _: usize) -> Self {
        z.to_c64()
    }
}

impl Scalar for MpComplex {
    fn zero_p(prec: usize) -> Self {
        MpComplex::zero(prec)
    }
    fn from_f64_p(re: f64, im: f64, prec: usize) -> Self {
        MpComplex::from_f64(re, im, prec)
    }
    fn from_cyclo(c: &CycloNumber, prec: usize) -> Self {
        embed_complex(c, prec)
    }
    fn precision(&self) -> usize {
        MpComplex::precision(self)
    }
    fn add(&self, o: &Self) -> Self {
        MpComplex::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MpComplex::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MpComplex::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        MpComplex::div(self, o)
    }
    fn neg(&self) -> Self {
        MpComplex::neg(self)
    }
    fn scale_f64(&self, x: f64) -> Self {
        self.scale(&mp_f64(x, self.precision()))
    }
    fn sqrt(&self) -> Self {
        MpComplex::sqrt(self)
    }
    fn abs_f64(&self) -> f64 {
        let a = self.re.clone().abs();
        let b = self.im.clone().abs();
        let m = mp_to_f64(&a).max(mp_to_f64(&b));
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        mp_to_f64(&self.abs())
    }
    fn to_c64(&self) -> Complex64 {
        MpComplex::to_c64(self)
    }
    fn from_mp(z: &MpComplex, prec: usize) -> Self {
        z.with_precision(prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclo::c;

    #[test]
    fn embeddings_of_named_constants() {
        let i = embed_complex(&c("i"), 128).to_c64();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let s3 = embed_complex(&c("sqrt3"), 128).to_c64();
        assert!((s3.re - 3f64.sqrt()).abs() < 1e-12 && s3.im.abs() < 1e-12);
        let w = embed_complex(&c("omega5"), 128).to_c64();
        let target = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 5.0);
        assert!((w - target).norm() < 1e-12);
    }

    #[test]
    fn high_precision_is_accurate() {
        let s5 = embed_complex(&c("sqrt5"), 256);
        let sq = s5.mul(&s5).sub(&MpComplex::from_f64(5.0, 0.0, 256));
        assert!(mp_to_f64(&sq.abs()) < 1e-70);
    }

    #[test]
    fn complex_sqrt_branches() {
        for (re, im) in [(3.0, 4.0), (-3.0, 4.0), (-3.0, -4.0), (-4.0, 0.0), (0.0, -2.0)] {
            let z = MpComplex::from_f64(re, im, 128);
            let r = z.sqrt();
            assert!(mp_to_f64(&r.mul(&r).sub(&z).abs()) < 1e-30);
            assert!(mp_to_f64(&r.re) >= 0.0);
            let zc = Complex64::new(re, im);
            assert!((r.to_c64() - zc.sqrt()).norm() < 1e-12);
        }
    }

    #[test]
    fn bigint_conversion() {
        let n: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let x = mp_bigint(&n, 200);
        assert!((mp_to_f64(&x) + 1.2345678901234568e29).abs() < 1e14);
    }
}

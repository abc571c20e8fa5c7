//! The cyclotomic field Q(ζ₆₀) in the power basis 1, ζ, …, ζ¹⁵.
//!
//! Elements are stored as sixteen integer numerators over one positive common
//! denominator. Φ₆₀ is monic with integer coefficients, so reduction of
//! products never introduces new denominators.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use super::AlgebraError;

pub const CONDUCTOR: usize = 60;
pub const DEGREE: usize = 16;

/// Φ₆₀ and the rewrite of ζ¹⁶ … ζ³⁰ in the power basis.
#[derive(Debug)]
pub struct FieldTable {
    /// Coefficients of Φ₆₀, lowest degree first (length 17, monic).
    pub phi: Vec<BigInt>,
    /// Row `k` holds ζ^(16+k) in the power basis, for k = 0..15.
    pub reduction: Vec<[BigInt; DEGREE]>,
    /// Row `j` holds ζ^j in the power basis, for j = 0..59.
    pub powers: Vec<[BigInt; DEGREE]>,
    /// The units of Z/60, i.e. the exponents of the Galois group.
    pub units: Vec<usize>,
}

static TABLE: OnceLock<FieldTable> = OnceLock::new();

/// Builds (once) and returns the reduction table for Q(ζ₆₀).
pub fn cyclo_field_build() -> &'static FieldTable {
    TABLE.get_or_init(build_table)
}

fn build_table() -> FieldTable {
    let phi = phi60_mobius();
    assert_eq!(phi.len(), DEGREE + 1);
    let zero_row = || std::array::from_fn::<BigInt, DEGREE, _>(|_| BigInt::zero());
    let mut powers: Vec<[BigInt; DEGREE]> = Vec::with_capacity(CONDUCTOR);
    let mut reduction = Vec::with_capacity(DEGREE - 1);
    let mut cur = zero_row();
    cur[0] = BigInt::one();
    // Walk ζ^0 .. ζ^59, recording rows for 16..=30 along the way.
    for j in 0..=30usize.max(CONDUCTOR - 1) {
        if j < CONDUCTOR {
            powers.push(cur.clone());
        }
        if (DEGREE..=30).contains(&j) {
            reduction.push(cur.clone());
        }
        // multiply by ζ
        let top = cur[DEGREE - 1].clone();
        let mut next = zero_row();
        for i in (1..DEGREE).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..DEGREE {
                next[i] -= &top * &phi[i];
            }
        }
        cur = next;
    }
    let units = (1..CONDUCTOR).filter(|a| a.gcd(&CONDUCTOR) == 1).collect();
    FieldTable {
        phi,
        reduction,
        powers,
        units,
    }
}

/// Φ₆₀ via the Möbius product over the divisors of 60.
fn phi60_mobius() -> Vec<BigInt> {
    // μ(60/d) = +1 for d ∈ {60, 10, 6, 4}, −1 for d ∈ {30, 20, 12, 2}.
    let mut num = vec![BigInt::one()];
    for d in [60usize, 10, 6, 4] {
        num = upoly::mul(&num, &upoly::x_pow_minus_one(d));
    }
    let mut den = vec![BigInt::one()];
    for d in [30usize, 20, 12, 2] {
        den = upoly::mul(&den, &upoly::x_pow_minus_one(d));
    }
    let (quot, rem) = upoly::divrem_monic(&num, &den);
    assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Minimal dense univariate integer polynomial helpers (lowest degree first).
pub mod upoly {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    pub fn x_pow_minus_one(n: usize) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); n + 1];
        p[0] = BigInt::from(-1);
        p[n] = BigInt::one();
        p
    }

    pub fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
        while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// Division by a monic polynomial; returns (quotient, remainder).
    pub fn divrem_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let b = trim(b.to_vec());
        assert!(b.last().is_some_and(|c| c.is_one()), "divisor must be monic");
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (vec![BigInt::zero()], r);
        }
        let mut quot = vec![BigInt::zero(); r.len() - db];
        for k in (0..quot.len()).rev() {
            let c = r[k + db].clone();
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
            quot[k] = c;
        }
        (trim(quot), trim(r))
    }
}

/// An exact element of Q(ζ₆₀).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    num: [BigInt; DEGREE],
    den: BigInt,
}

fn zero_array() -> [BigInt; DEGREE] {
    std::array::from_fn(|_| BigInt::zero())
}

impl CycloNumber {
    pub fn zero() -> Self {
        CycloNumber {
            num: zero_array(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut num = zero_array();
        num[0] = BigInt::from(n);
        CycloNumber {
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let mut num = zero_array();
        num[0] = n;
        CycloNumber {
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        let mut num = zero_array();
        num[0] = r.numer().clone();
        CycloNumber {
            num,
            den: r.denom().clone(),
        }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Builds an element from its sixteen power-basis coordinates.
    pub fn from_coeffs(coeffs: &[Rational]) -> Self {
        assert!(coeffs.len() <= DEGREE);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = zero_array();
        for (i, c) in coeffs.iter().enumerate() {
            num[i] = c.numer() * (&den / c.denom());
        }
        let mut out = CycloNumber { num, den };
        out.normalize();
        out
    }

    /// ζ₆₀^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let t = cyclo_field_build();
        let j = k.rem_euclid(CONDUCTOR as i64) as usize;
        CycloNumber {
            num: t.powers[j].clone(),
            den: BigInt::one(),
        }
    }

    /// Power-basis coordinates as rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn coeff(&self, j: usize) -> Rational {
        Rational::new(self.num[j].clone(), self.den.clone())
    }

    pub fn numerators(&self) -> &[BigInt; DEGREE] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    fn is_rational_inner(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The element as a rational, if it lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational_inner() {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The element as an integer, if it lies in Z.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_rational_inner() && self.den.is_one() {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in self.num.iter() {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = if self.den == other.den {
            CycloNumber {
                num: std::array::from_fn(|i| &self.num[i] + &other.num[i]),
                den: self.den.clone(),
            }
        } else {
            CycloNumber {
                num: std::array::from_fn(|i| {
                    &self.num[i] * &other.den + &other.num[i] * &self.den
                }),
                den: &self.den * &other.den,
            }
        };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        CycloNumber {
            num: std::array::from_fn(|i| -&self.num[i]),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = CycloNumber {
            num: std::array::from_fn(|i| &self.num[i] * r.numer()),
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        let mut out = CycloNumber {
            num: std::array::from_fn(|i| &self.num[i] * &n),
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if other.is_rational_inner() {
            return self.scale_rational(&Rational::new(other.num[0].clone(), other.den.clone()));
        }
        if self.is_rational_inner() {
            return other.scale_rational(&Rational::new(self.num[0].clone(), self.den.clone()));
        }
        let table = cyclo_field_build();
        let mut wide: Vec<BigInt> = vec![BigInt::zero(); 2 * DEGREE - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut num = zero_array();
        for (i, c) in wide.iter().enumerate().take(DEGREE) {
            num[i] = c.clone();
        }
        for k in DEGREE..(2 * DEGREE - 1) {
            let c = &wide[k];
            if c.is_zero() {
                continue;
            }
            let row = &table.reduction[k - DEGREE];
            for (i, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    num[i] += c * r;
                }
            }
        }
        let mut out = CycloNumber {
            num,
            den: &self.den * &other.den,
        };
        out.normalize();
        out
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// The Galois automorphism ζ ↦ ζ^a (a coprime to 60).
    pub fn galois(&self, a: usize) -> Self {
        assert!(a.gcd(&CONDUCTOR) == 1, "exponent must be a unit mod 60");
        let table = cyclo_field_build();
        let mut num = zero_array();
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &table.powers[(a * j) % CONDUCTOR];
            for (i, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    num[i] += c * r;
                }
            }
        }
        let mut out = CycloNumber {
            num,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    /// Complex conjugation under the standard embedding.
    pub fn conj(&self) -> Self {
        self.galois(CONDUCTOR - 1)
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rational {
        let table = cyclo_field_build();
        let mut acc = Self::one();
        for &a in &table.units {
            acc = acc.mul(&self.galois(a));
        }
        acc.to_rational().expect("norm is rational")
    }

    /// Multiplicative inverse via the product of the Galois conjugates.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::from_rational(&(Rational::one() / r)));
        }
        let table = cyclo_field_build();
        let mut others = Self::one();
        for &a in table.units.iter().filter(|&&a| a != 1) {
            others = others.mul(&self.galois(a));
        }
        let n = self.mul(&others).to_rational()?;
        Some(others.scale_rational(&(Rational::one() / n)))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|o| self.mul(&o))
    }

    /// Height: the largest absolute value among numerators and denominator.
    pub fn height(&self) -> BigInt {
        self.num
            .iter()
            .map(|c| c.abs())
            .chain(std::iter::once(self.den.clone()))
            .max()
            .unwrap()
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Rationals print as `p` or `p/q`; other elements print as a parenthesized
/// power-basis sum in the symbol `z60`.
impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut parts = Vec::new();
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = match j {
                0 => format!("{}", c),
                1 => format!("{}*z60", c),
                _ => format!("{}*z60^{}", c, j),
            };
            parts.push(s);
        }
        write!(f, "({})", parts.join(" + "))
    }
}

impl From<i64> for CycloNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<&Rational> for CycloNumber {
    fn from(r: &Rational) -> Self {
        Self::from_rational(r)
    }
}

macro_rules! cyclo_ops {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl std::ops::$tr<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: &CycloNumber) -> CycloNumber {
                CycloNumber::$inner(self, rhs)
            }
        }
        impl std::ops::$tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                CycloNumber::$inner(&self, &rhs)
            }
        }
        impl std::ops::$tr<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: &CycloNumber) -> CycloNumber {
                CycloNumber::$inner(&self, rhs)
            }
        }
        impl std::ops::$tr<CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                CycloNumber::$inner(self, &rhs)
            }
        }
    };
}
cyclo_ops!(Add, add, add);
cyclo_ops!(Sub, sub, sub);
cyclo_ops!(Mul, mul, mul);

impl std::ops::Div<&CycloNumber> for &CycloNumber {
    type Output = CycloNumber;
    fn div(self, rhs: &CycloNumber) -> CycloNumber {
        CycloNumber::div(self, rhs).expect("division by zero in Q(ζ60)")
    }
}

impl std::ops::Div<CycloNumber> for CycloNumber {
    type Output = CycloNumber;
    fn div(self, rhs: CycloNumber) -> CycloNumber {
        CycloNumber::div(&self, &rhs).expect("division by zero in Q(ζ60)")
    }
}

impl std::ops::Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber::neg(&self)
    }
}

impl std::ops::Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber::neg(self)
    }
}

/// Names accepted by [`cyclo_constant`].
pub const CONSTANT_NAMES: &[&str] = &[
    "i", "sqrt3", "sqrt5", "sqrt15", "rho3", "omega5", "zeta12", "z60",
];

/// A named constant of the field, checked against its defining relation.
pub fn cyclo_constant(name: &str) -> Result<CycloNumber, AlgebraError> {
    let z = CycloNumber::zeta_pow;
    let one = CycloNumber::one();
    let value = match name {
        "i" => z(15),
        "rho3" => z(20),
        "omega5" => z(12),
        "zeta12" => z(5),
        "z60" => z(1),
        "sqrt5" => {
            let w = z(12);
            &one + &(&w + &w.pow(4)).scale_int(2)
        }
        "sqrt3" => {
            let r = z(20);
            -(&z(15) * &(&r - &r.square()))
        }
        "sqrt15" => &cyclo_constant("sqrt3")? * &cyclo_constant("sqrt5")?,
        _ => return Err(AlgebraError::UnknownConstant(name.to_string())),
    };
    let ok = match name {
        "i" => value.square() == CycloNumber::from_int(-1),
        "rho3" => (&(&value.square() + &value) + &one).is_zero(),
        "omega5" => value.pow(5).is_one() && !value.is_one(),
        "zeta12" => value.pow(12).is_one() && value.pow(4) != one && value.pow(6) != one,
        "z60" => value.pow(60).is_one() && value.pow(30) != one && value.pow(20) != one && value.pow(12) != one,
        "sqrt5" => value.square() == CycloNumber::from_int(5),
        "sqrt3" => value.square() == CycloNumber::from_int(3),
        "sqrt15" => value.square() == CycloNumber::from_int(15),
        _ => unreachable!(),
    };
    if !ok {
        return Err(AlgebraError::ConstantCheckFailed(name.to_string()));
    }
    Ok(value)
}

/// Shorthand for constants whose names are known to be valid.
pub fn c(name: &str) -> CycloNumber {
    static TABLE: OnceLock<Vec<(&'static str, CycloNumber)>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        CONSTANT_NAMES
            .iter()
            .map(|&n| (n, cyclo_constant(n).expect("registered constant")))
            .collect()
    });
    match table.iter().find(|(n, _)| *n == name) {
        Some((_, v)) => v.clone(),
        None => panic!("unknown constant `{name}`"),
    }
}

/// Square root inside the field, when it can be found.
///
/// Handles rationals (square classes ±1, ±3, ±5, ±15) and elements of the
/// quadratic subfields Q(√s) whose roots lie in Q(i, √3, √5).
pub fn sqrt_in_field(a: &CycloNumber) -> Option<CycloNumber> {
    if a.is_zero() {
        return Some(CycloNumber::zero());
    }
    if let Some(r) = a.to_rational() {
        return rational_sqrt_in_field(&r);
    }
    for s in [-1i64, 3, -3, 5, -5, 15, -15] {
        let root_s = match rational_sqrt_in_field(&Rational::from_integer(BigInt::from(s))) {
            Some(v) => v,
            None => continue,
        };
        // a = p + q·√s ?
        let j = match (1..DEGREE).find(|&j| !root_s.num[j].is_zero()) {
            Some(j) => j,
            None => continue,
        };
        let qv = a.coeff(j) / root_s.coeff(j);
        let rest = a - &root_s.scale_rational(&qv);
        let p = match rest.to_rational() {
            Some(p) => p,
            None => continue,
        };
        for t in [1i64, -1, 3, -3, 5, -5, 15, -15] {
            let tq = Rational::from_integer(BigInt::from(t));
            let (pp, qq) = (&p / &tq, &qv / &tq);
            let sq = Rational::from_integer(BigInt::from(s));
            let n2 = &pp * &pp - &sq * &qq * &qq;
            let n = match super::rational::rational_sqrt(&n2) {
                Some(n) => n,
                None => continue,
            };
            for sign in [1i64, -1] {
                let x2 = (&pp + &n * Rational::from_integer(BigInt::from(sign)))
                    / Rational::from_integer(BigInt::from(2));
                let x = match super::rational::rational_sqrt(&x2) {
                    Some(x) if !x.is_zero() => x,
                    _ => continue,
                };
                let y = &qq / (Rational::from_integer(BigInt::from(2)) * &x);
                let beta = &CycloNumber::from_rational(&x) + &root_s.scale_rational(&y);
                let cand = match rational_sqrt_in_field(&tq) {
                    Some(rt) => &beta * &rt,
                    None => continue,
                };
                if &cand.square() == a {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn rational_sqrt_in_field(r: &Rational) -> Option<CycloNumber> {
    use super::rational::squarefree_split;
    if r.is_zero() {
        return Some(CycloNumber::zero());
    }
    let n = r.numer() * r.denom();
    let (sign, s, m) = squarefree_split(&n);
    let s = s.to_i64()?;
    let base = match (sign, s) {
        (1, 1) => CycloNumber::one(),
        (-1, 1) => c("i"),
        (1, 3) => c("sqrt3"),
        (-1, 3) => &c("i") * &c("sqrt3"),
        (1, 5) => c("sqrt5"),
        (-1, 5) => &c("i") * &c("sqrt5"),
        (1, 15) => c("sqrt15"),
        (-1, 15) => &c("i") * &c("sqrt15"),
        _ => return None,
    };
    // √(n)/den = base·m/den
    let scale = Rational::new(m, r.denom().clone());
    Some(base.scale_rational(&scale))
}

/// Rational coordinates of `a` in the basis 1, i, √3, i√3, √5, i√5, √15, i√15
/// of Q(i, √3, √5), if `a` lies in that subfield.
pub fn surd_coordinates(a: &CycloNumber) -> Option<[Rational; 8]> {
    let i = c("i");
    let basis: Vec<CycloNumber> = ["1", "sqrt3", "sqrt5", "sqrt15"]
        .iter()
        .flat_map(|&n| {
            let b = if n == "1" { CycloNumber::one() } else { c(n) };
            let ib = &b * &i;
            [b, ib]
        })
        .collect();
    let n = basis.len();
    // Augmented DEGREE x (n + 1) system over Q.
    let mut m: Vec<Vec<Rational>> = (0..DEGREE)
        .map(|r| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b.coeff(r)).collect();
            row.push(a.coeff(r));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..DEGREE).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..DEGREE {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..=n {
                    let v = &m[row][k] * &f;
                    m[r][k] = &m[r][k] - &v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut out: [Rational; 8] = std::array::from_fn(|_| Rational::zero());
    for (r, &col) in pivots.iter().enumerate() {
        out[col] = m[r][n].clone();
    }
    Some(out)
}

impl CycloNumber {
    /// Human-readable form such as `9/11 + 7/11*sqrt3`; falls back to the
    /// power-basis form outside Q(i, √3, √5).
    pub fn to_surd_string(&self) -> String {
        const NAMES: [&str; 8] = ["", "i", "sqrt3", "i*sqrt3", "sqrt5", "i*sqrt5", "sqrt15", "i*sqrt15"];
        let Some(co) = surd_coordinates(self) else { return self.to_string() };
        let mut out = String::new();
        for (q, name) in co.iter().zip(NAMES) {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            let body = match (name.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => name.to_string(),
                (false, false) => format!("{mag}*{name}"),
            };
            match (out.is_empty(), neg) {
                (true, false) => out.push_str(&body),
                (true, true) => out.push_str(&format!("-{body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
                (false, true) => out.push_str(&format!(" - {body}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi60_by_division() -> Vec<BigInt> {
        // Φ_n = (x^n − 1) / Π_{d|n, d<n} Φ_d, computed recursively.
        fn phi(n: usize) -> Vec<BigInt> {
            let mut den = vec![BigInt::one()];
            for d in 1..n {
                if n % d == 0 {
                    den = upoly::mul(&den, &phi(d));
                }
            }
            let (q, r) = upoly::divrem_monic(&upoly::x_pow_minus_one(n), &den);
            assert!(r.iter().all(|c| c.is_zero()));
            q
        }
        phi(60)
    }

    #[test]
    fn phi60_matches_division_oracle() {
        let t = cyclo_field_build();
        assert_eq!(t.phi, phi60_by_division());
        assert_eq!(t.phi.len() - 1, DEGREE);
    }

    #[test]
    fn zeta_has_order_sixty() {
        assert!(CycloNumber::zeta_pow(60).is_one());
        assert!(CycloNumber::zeta_pow(1).pow(60).is_one());
        assert!(!CycloNumber::zeta_pow(1).pow(30).is_one());
        assert_eq!(CycloNumber::zeta_pow(15).square(), CycloNumber::from_int(-1));
    }

    #[test]
    fn constants_satisfy_relations() {
        for name in CONSTANT_NAMES {
            cyclo_constant(name).unwrap();
        }
        assert!(cyclo_constant("pi").is_err());
        let s5 = c("sqrt5");
        assert_eq!(s5.square(), CycloNumber::from_int(5));
        let s3 = c("sqrt3");
        assert_eq!(s3.square(), CycloNumber::from_int(3));
    }

    #[test]
    fn inverse_and_norm() {
        let a = &c("sqrt5") + &CycloNumber::from_int(3);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(a.norm(), Rational::from_integer(BigInt::from(16 * 16 * 16 * 16)));
    }

    #[test]
    fn galois_flips_sqrt3_and_fixes_i() {
        assert_eq!(c("sqrt3").galois(41), -c("sqrt3"));
        assert_eq!(c("i").galois(41), c("i"));
        assert_eq!(c("sqrt5").galois(41), c("sqrt5"));
        assert_eq!(c("i").conj(), -c("i"));
    }

    #[test]
    fn field_square_roots() {
        let s3 = c("sqrt3");
        // (2 + √3) = ((√6 + √2)/2)^2 has no root here, but 4 + 2√3 = (1 + √3)^2 does
        let a = &CycloNumber::from_int(4) + &s3.scale_int(2);
        let r = sqrt_in_field(&a).unwrap();
        assert_eq!(r.square(), a);
        assert_eq!(sqrt_in_field(&CycloNumber::from_int(-12)).unwrap().square(), CycloNumber::from_int(-12));
        assert!(sqrt_in_field(&CycloNumber::from_int(2)).is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycloNumber::frac(-3, 2).to_string(), "-3/2");
        assert_eq!(CycloNumber::zeta_pow(1).to_string(), "(1*z60)");
    }

    #[test]
    fn surd_strings() {
        let x = &CycloNumber::frac(9, 11) + &c("sqrt3").scale_rational(&Rational::new(7.into(), 11.into()));
        assert_eq!(x.to_surd_string(), "9/11 + 7/11*sqrt3");
        assert_eq!((-&c("i")).to_surd_string(), "-i");
        assert_eq!(CycloNumber::zero().to_surd_string(), "0");
        assert_eq!(c("rho3").to_surd_string(), "-1/2 + 1/2*i*sqrt3");
        assert_eq!(c("z60").to_surd_string(), c("z60").to_string());
    }
}

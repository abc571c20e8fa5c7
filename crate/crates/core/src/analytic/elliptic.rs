//! sn(·, i) by integration plus lattice reduction, and the Laurent
//! expansion of the equianharmonic ℘ (g2 = 0, g3 = 1).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use dashu_base::SquareRoot;
use num_traits::Zero;
use serde::Serialize;

use super::taylor::{integrate, IntegratorConfig, Outcome, TaylorSystem};
use super::{AnalyticError, ComplexPath};
use crate::algebra::mp::{mp_int, mp_pi, mp_to_f64};
use crate::algebra::{q, MpComplex, MpFloat, Rational, Registry, Scalar};
use crate::fields::PolyVectorField;

/// K = ∫₀¹ dζ/√(1 − ζ⁴), by the trapezoid rule on ∫₀^{π/2} dθ/√(1 + sin²θ)
/// with the number of nodes doubled until two estimates agree.
pub fn lemniscate_quarter_period(prec: usize) -> MpFloat {
    static CACHE: OnceLock<Mutex<HashMap<usize, MpFloat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(k) = cache.lock().expect("K cache").get(&prec) {
        return k.clone();
    }
    let work = prec + 32;
    let one = mp_int(1, work);
    let half_pi = mp_pi(work) / mp_int(2, work);
    let f = |th: &MpFloat| {
        let s = th.sin();
        (&one / (&one + &s * &s).sqrt()).with_precision(work).value()
    };
    let mut n = 8i64;
    let mut prev: Option<MpFloat> = None;
    let eps = mp_to_f64(&half_pi) * 2f64.powi(-(prec as i32) - 4);
    loop {
        let h = &half_pi / mp_int(n, work);
        let mut sum = (f(&mp_int(0, work)) + f(&half_pi)) / mp_int(2, work);
        for j in 1..n {
            sum += f(&(&h * mp_int(j, work)));
        }
        let est = sum * &h;
        if let Some(p) = &prev {
            if mp_to_f64(&(&est - p)).abs() <= eps || n > 1 << 16 {
                let k = est.with_precision(prec).value();
                cache.lock().expect("K cache").insert(prec, k.clone());
                return k;
            }
        }
        prev = Some(est);
        n *= 2;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EllipticKind {
    /// Jacobi sn with modulus i: (u')² = 1 − u⁴, u(0) = 0, u'(0) = 1.
    SnI,
    /// Weierstrass ℘ with (℘')² = 4℘³ − 1.
    WpHex,
}

#[derive(Clone, Debug)]
pub struct EllipticEvaluator<S: Scalar> {
    pub kind: EllipticKind,
    pub prec: usize,
    quarter: Option<S>,
    system: Option<TaylorSystem<S>>,
    laurent: Vec<Rational>,
}

impl<S: Scalar> EllipticEvaluator<S> {
    pub fn new_sn(prec: usize) -> Self {
        let k = lemniscate_quarter_period(prec.max(53));
        let kz = MpComplex::new(k, mp_int(0, prec.max(53)));
        let r = Registry::new(&["u", "p"]);
        let field = PolyVectorField::parse(&r, &["p", "-2*u^3"]).expect("sn system");
        EllipticEvaluator {
            kind: EllipticKind::SnI,
            prec,
            quarter: Some(S::from_mp(&kz, prec)),
            system: Some(TaylorSystem::new(&field, prec).expect("sn system")),
            laurent: Vec::new(),
        }
    }

    pub fn new_wp(order: usize) -> Self {
        EllipticEvaluator {
            kind: EllipticKind::WpHex,
            prec: 0,
            quarter: None,
            system: None,
            laurent: wp_laurent(order),
        }
    }

    pub fn quarter_period(&self) -> Option<&S> {
        self.quarter.as_ref()
    }

    pub fn laurent(&self) -> &[Rational] {
        &self.laurent
    }

    /// (u, u') integrated along the straight segment from 0 without reduction.
    pub fn sn_direct(&self, z: &S) -> Result<(S, S), AnalyticError> {
        let sys = self
            .system
            .as_ref()
            .ok_or_else(|| AnalyticError::Precondition("not an sn evaluator".into()))?;
        let zero = S::zero_p(self.prec);
        if z.abs_f64() == 0.0 {
            return Ok((zero, S::from_f64_p(1.0, 0.0, self.prec)));
        }
        let path = ComplexPath::segment(zero.clone(), z.clone())?;
        let cfg = IntegratorConfig {
            tol: 2f64.powi(-(self.prec as i32)),
            ..IntegratorConfig::default()
        };
        let init = [zero, S::from_f64_p(1.0, 0.0, self.prec)];
        match integrate(sys, &init, &path, &cfg)? {
            Outcome::Completed(sol) => Ok((sol.end[0].clone(), sol.end[1].clone())),
            Outcome::Singular { .. } => Err(AnalyticError::Pole(z.to_c64())),
        }
    }

    /// (sn(z, i), sn'(z, i)). The argument is reduced modulo the lattice
    /// spanned by b1 = (1+i)K and b2 = (1−i)K to |w| ≤ K; translations by
    /// b1 and b2 act by u ↦ −i/u and u ↦ i/u.
    pub fn sn(&self, z: &S) -> Result<(S, S), AnalyticError> {
        let k = self
            .quarter
            .as_ref()
            .ok_or_else(|| AnalyticError::Precondition("not an sn evaluator".into()))?;
        let kf = k.to_c64().re;
        let zc = z.to_c64() / kf;
        let m = ((zc.re + zc.im) / 2.0).round() as i64;
        let n = ((zc.re - zc.im) / 2.0).round() as i64;
        let shift = S::from_f64_p((m + n) as f64, (m - n) as f64, self.prec).mul(k);
        let w = z.sub(&shift);
        let (u, p) = self.sn_direct(&w)?;
        let i = S::from_f64_p(0.0, 1.0, self.prec);
        let small = 2f64.powi(-(self.prec as i32) / 2);
        Ok(match (m.rem_euclid(2), n.rem_euclid(2)) {
            (0, 0) => (u, p),
            (1, 1) => (u.neg(), p.neg()),
            (mo, _) => {
                if u.abs_f64() < small {
                    return Err(AnalyticError::Pole(z.to_c64()));
                }
                let sign = if mo == 1 { i.neg() } else { i };
                let v = sign.div(&u);
                let dv = sign.neg().mul(&p).div(&u.mul(&u));
                (v, dv)
            }
        })
    }
}

/// Largest residual of each relation over the sample points.
#[derive(Clone, Debug, Serialize)]
pub struct SnRelationReport {
    pub points: usize,
    pub seed: u64,
    pub precision: usize,
    /// u(z+2K) + u(z)
    pub shift_2k: f64,
    /// u(z+iK')·u(z) + i, with iK' = (1+i)K
    pub shift_ik: f64,
    /// u(z+2K+iK')·u(z) − i
    pub shift_2k_ik: f64,
    /// u(iz) − iu(z)
    pub rotation: f64,
}

impl SnRelationReport {
    pub fn max(&self) -> f64 {
        [self.shift_2k, self.shift_ik, self.shift_2k_ik, self.rotation].into_iter().fold(0.0, f64::max)
    }
}

impl<S: Scalar> EllipticEvaluator<S> {
    /// (u, u') continued along a polyline from 0, without lattice reduction.
    pub fn sn_along(&self, vertices: Vec<S>) -> Result<(S, S), AnalyticError> {
        let sys = self
            .system
            .as_ref()
            .ok_or_else(|| AnalyticError::Precondition("not an sn evaluator".into()))?;
        let zero = S::zero_p(self.prec);
        let mut v = vec![zero.clone()];
        v.extend(vertices);
        let path = ComplexPath::new(v, false)?;
        let cfg = IntegratorConfig {
            tol: 2f64.powi(-(self.prec as i32)),
            ..IntegratorConfig::default()
        };
        let init = [zero, S::from_f64_p(1.0, 0.0, self.prec)];
        match integrate(sys, &init, &path, &cfg)? {
            Outcome::Completed(sol) => Ok((sol.end[0].clone(), sol.end[1].clone())),
            Outcome::Singular { at, radius, .. } => Err(AnalyticError::Singularity { at, radius }),
        }
    }
}

/// Checks the half-period relations of sn(·, i) at random z = (x + iy)K with
/// 0.3 ≤ |x|, |y| ≤ 0.6. Each side is continued from 0 along axis-parallel
/// legs that stay at least 0.3K from the poles (±1 ± i)K + lattice.
pub fn sn_half_period_check(points: usize, seed: u64, prec: usize) -> Result<SnRelationReport, AnalyticError> {
    use rand::{Rng, SeedableRng};
    let ev = EllipticEvaluator::<MpComplex>::new_sn(prec);
    let k = ev.quarter_period().expect("sn").clone();
    let c = |re: f64, im: f64| MpComplex::from_f64_p(re, im, prec);
    let kk = |re: f64, im: f64| c(re, im).mul(&k);
    let kk = &kk;
    let i = c(0.0, 1.0);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SnRelationReport {
        points,
        seed,
        precision: prec,
        shift_2k: 0.0,
        shift_ik: 0.0,
        shift_2k_ik: 0.0,
        rotation: 0.0,
    };
    let rel = |a: &MpComplex, b: &MpComplex| a.sub(b).abs_f64() / b.abs_f64().max(1.0);
    for _ in 0..points {
        let mut draw = || {
            let m: f64 = rng.gen_range(0.3..0.6);
            if rng.gen_bool(0.5) {
                -m
            } else {
                m
            }
        };
        let (x, y) = (draw(), draw());
        let z = kk(x, y);
        let (u, _) = ev.sn_along(vec![z.clone()])?;
        let at = |dx: f64, dy: f64| z.add(&kk(dx, dy));
        let (a, _) = ev.sn_along(vec![at(2.0, 0.0)])?;
        rep.shift_2k = rep.shift_2k.max(rel(&a, &u.neg()));
        let (b, _) = ev.sn_along(vec![z.clone(), at(1.0, 0.0), at(1.0, 1.0)])?;
        rep.shift_ik = rep.shift_ik.max(rel(&b.mul(&u), &i.neg()));
        let (d, _) = ev.sn_along(vec![z.clone(), at(3.0, 0.0), at(3.0, 1.0)])?;
        rep.shift_2k_ik = rep.shift_2k_ik.max(rel(&d.mul(&u), &i));
        let (r, _) = ev.sn_along(vec![i.mul(&z)])?;
        rep.rotation = rep.rotation.max(rel(&r, &i.mul(&u)));
    }
    Ok(rep)
}

/// Convenience wrapper constructing an evaluator at the precision of `z`.
pub fn sn_eval<S: Scalar>(z: &S) -> Result<(S, S), AnalyticError> {
    EllipticEvaluator::<S>::new_sn(z.precision()).sn(z)
}

/// Coefficients c_k of ℘(t) = t⁻² + Σ_{k≥2} c_k t^{2k−2} with g2 = 0, g3 = 1.
fn wp_c(kmax: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); kmax.max(3) + 1];
    c[3] = q(1, 28);
    for k in 4..=kmax {
        let mut s = Rational::zero();
        for m in 2..=k - 2 {
            s += &c[m] * &c[k - m];
        }
        c[k] = s * q(3, ((2 * k + 1) * (k - 3)) as i64);
    }
    c.truncate(kmax + 1);
    c
}

/// b_1..b_n with ℘(t) = t⁻² + Σ b_m t^{6m−2}.
pub fn wp_laurent(n: usize) -> Vec<Rational> {
    let c = wp_c(3 * n);
    (1..=n).map(|m| c[3 * m].clone()).collect()
}

/// ρ(s) = Σ b_m s^m, so that ρ(t⁶) = t²℘(t) − 1. Entry 0 is the constant term.
pub fn rho_series(n: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero()];
    v.extend(wp_laurent(n));
    v
}

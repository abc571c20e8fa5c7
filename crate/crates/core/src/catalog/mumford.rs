//! Random points on the Mumford model of the Jacobian of ξ² = ζ⁵ − 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::data::{MUMFORD_G1, MUMFORD_G2, MUMFORD_VARS};
use super::CatalogError;
use crate::algebra::{parse_poly, MultiPoly, Registry, Scalar};

/// The surface {g1 = g2 = 0} in coordinates (u1, u2, v1, v2).
#[derive(Clone, Debug)]
pub struct MumfordVariety {
    pub vars: Registry,
    pub g1: MultiPoly,
    pub g2: MultiPoly,
}

impl Default for MumfordVariety {
    fn default() -> Self {
        let vars = Registry::new(&MUMFORD_VARS);
        let g1 = parse_poly(MUMFORD_G1, &vars).expect("g1");
        let g2 = parse_poly(MUMFORD_G2, &vars).expect("g2");
        Self { vars, g1, g2 }
    }
}

impl MumfordVariety {
    pub fn new() -> Self {
        Self::default()
    }
}

/// `n` points built from pairs of curve points (ζ_i, ξ_i) with ξ_i² = ζ_i⁵ − 1:
/// u1 = −(ζ1 + ζ2), u2 = ζ1ζ2, v1 = (ξ1 − ξ2)/(ζ1 − ζ2), v2 = ξ1 − v1ζ1.
pub fn sample_mumford_points<S: Scalar>(n: usize, seed: u64, prec: usize) -> Result<Vec<[S; 4]>, CatalogError> {
    if n == 0 {
        return Err(CatalogError::Sampling("sample count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let draw = |rng: &mut ChaCha8Rng| {
        let re: f64 = rng.gen_range(-1.2..1.2);
        let im: f64 = rng.gen_range(-1.2..1.2);
        S::from_f64_p(re, im, prec)
    };
    let one = S::from_f64_p(1.0, 0.0, prec);
    let mut attempts = 0usize;
    while out.len() < n {
        attempts += 1;
        if attempts > 100 * n + 100 {
            return Err(CatalogError::Sampling("could not draw separated curve points".into()));
        }
        let z1 = draw(&mut rng);
        let z2 = draw(&mut rng);
        let dz = z1.sub(&z2);
        if dz.abs_f64() < 1e-3 {
            continue;
        }
        let x1 = z1.powi(5).sub(&one).sqrt();
        let x2 = z2.powi(5).sub(&one).sqrt();
        let u1 = z1.add(&z2).neg();
        let u2 = z1.mul(&z2);
        let v1 = x1.sub(&x2).div(&dz);
        let v2 = x1.sub(&v1.mul(&z1));
        out.push([u1, u2, v1, v2]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MpComplex;
    use num_complex::Complex64;

    fn eval(p: &MultiPoly, pt: &[MpComplex; 4]) -> MpComplex {
        let mut acc = MpComplex::zero(pt[0].precision());
        for (m, c) in p.terms() {
            let mut t = MpComplex::from_cyclo(c, pt[0].precision());
            for (j, &e) in m.0.iter().enumerate() {
                t = t.mul(&pt[j].powi(e));
            }
            acc = Scalar::add(&acc, &t);
        }
        acc
    }

    #[test]
    fn points_lie_on_variety() {
        let v = MumfordVariety::new();
        let pts = sample_mumford_points::<MpComplex>(10, 7, 192).unwrap();
        for p in &pts {
            assert!(eval(&v.g1, p).abs_f64() < 1e-40);
            assert!(eval(&v.g2, p).abs_f64() < 1e-40);
        }
    }

    #[test]
    fn seeded_and_nonempty() {
        let a = sample_mumford_points::<Complex64>(3, 1, 53).unwrap();
        let b = sample_mumford_points::<Complex64>(3, 1, 53).unwrap();
        assert_eq!(a, b);
        assert!(sample_mumford_points::<Complex64>(0, 1, 53).is_err());
    }
}

//! Complex-time integration, elliptic functions and formal series.

mod elliptic;
mod formal;
mod taylor;
mod xii;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

pub use elliptic::{
    lemniscate_quarter_period, rho_series, sn_eval, sn_half_period_check, wp_laurent, EllipticEvaluator, EllipticKind,
    SnRelationReport,
};
pub use formal::{mu_equation_residual, xi_formal_solution, SeriesSolution};
pub use taylor::{integrate, integrate_path, IntegratorConfig, Outcome, PathSolution, TaylorSystem, TracePoint};
pub use xii::{chazy12_from_polynomial, chazy12_solutions, xii_residual, sl2_orbit_check, Chazy12Solution, Jet};

use crate::algebra::{AlgebraError, Scalar};
use crate::fields::PolyVectorField;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticError {
    #[error("singularity near t = {at} (estimated radius {radius:.3e})")]
    Singularity { at: Complex64, radius: f64 },
    #[error("pole at z = {0}")]
    Pole(Complex64),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Polyline in complex time.
#[derive(Clone, Debug)]
pub struct ComplexPath<S: Scalar> {
    vertices: Vec<S>,
    closed: bool,
}

impl<S: Scalar> ComplexPath<S> {
    pub fn new(vertices: Vec<S>, closed: bool) -> Result<Self, AnalyticError> {
        if vertices.is_empty() {
            return Err(AnalyticError::InvalidPath("no vertices".into()));
        }
        for w in vertices.windows(2) {
            if w[1].sub(&w[0]).abs_f64() == 0.0 {
                return Err(AnalyticError::InvalidPath("repeated consecutive vertex".into()));
            }
        }
        if closed {
            let end = vertices.last().expect("nonempty");
            if vertices.len() < 3 || end.sub(&vertices[0]).abs_f64() != 0.0 {
                return Err(AnalyticError::InvalidPath("closed path must return to its start".into()));
            }
        }
        Ok(ComplexPath { vertices, closed })
    }

    pub fn segment(a: S, b: S) -> Result<Self, AnalyticError> {
        Self::new(vec![a, b], false)
    }

    /// Regular n-gon around `center` starting and ending at `start`.
    pub fn circle_through(center: &S, start: &S, n: usize) -> Result<Self, AnalyticError> {
        let prec = start.precision();
        let r = start.sub(center);
        let mut v = vec![start.clone()];
        for j in 1..n {
            let th = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let rot = S::from_f64_p(th.cos(), th.sin(), prec);
            v.push(center.add(&r.mul(&rot)));
        }
        v.push(start.clone());
        Self::new(v, true)
    }

    pub fn vertices(&self) -> &[S] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    /// |end − start| / max(1, |start|), maximized over components.
    pub residual: f64,
    pub steps: usize,
    pub verdict: &'static str,
}

/// Continues a solution around a closed loop and measures how far it is from
/// returning to its starting value.
pub fn monodromy_probe<S: Scalar>(
    field: &PolyVectorField,
    init: &[S],
    lp: &ComplexPath<S>,
    tol: f64,
) -> Result<MonodromyReport, AnalyticError> {
    if !lp.is_closed() {
        return Err(AnalyticError::InvalidPath("monodromy loop must be closed".into()));
    }
    let sol = integrate_path(field, init, lp, tol)?;
    let residual = init
        .iter()
        .zip(&sol.end)
        .map(|(a, b)| b.sub(a).abs_f64() / a.abs_f64().max(1.0))
        .fold(0.0, f64::max);
    let verdict = if residual < tol.sqrt().max(1e-6) {
        "consistent with single-valuedness"
    } else {
        "not closed; investigate at higher precision"
    };
    Ok(MonodromyReport {
        residual,
        steps: sol.steps,
        verdict,
    })
}

/// Chazy II probe: follows a real solution until it meets a movable pole,
/// then goes once around that pole.
#[derive(Clone, Debug, Serialize)]
pub struct PoleLoopReport {
    pub pole_estimate: (f64, f64),
    pub loop_radius: f64,
    pub monodromy: MonodromyReport,
}

pub fn pole_loop_probe<S: Scalar>(
    field: &PolyVectorField,
    init: &[S],
    horizon: f64,
    tol: f64,
) -> Result<PoleLoopReport, AnalyticError> {
    let prec = init[0].precision();
    let sys = TaylorSystem::<S>::new(field, prec)?;
    let cfg = IntegratorConfig {
        tol,
        ..IntegratorConfig::default()
    };
    let ray = ComplexPath::segment(S::zero_p(prec), S::from_f64_p(horizon, 0.0, prec))?;
    let pole = match integrate(&sys, init, &ray, &cfg)? {
        Outcome::Singular { at, .. } => at,
        Outcome::Completed(_) => {
            return Err(AnalyticError::Precondition(format!("no pole met on [0, {horizon}]")));
        }
    };
    let r = (pole.re / 2.0).min(0.5);
    let start = S::from_f64_p(pole.re - r, 0.0, prec);
    let lead = ComplexPath::segment(S::zero_p(prec), start.clone())?;
    let at_start = integrate_path(field, init, &lead, tol)?.end;
    let centre = S::from_f64_p(pole.re, 0.0, prec);
    let lp = ComplexPath::circle_through(&centre, &start, 48)?;
    let monodromy = monodromy_probe(field, &at_start, &lp, tol)?;
    Ok(PoleLoopReport {
        pole_estimate: (pole.re, pole.im),
        loop_radius: r,
        monodromy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Registry;

    #[test]
    fn path_validation() {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        assert!(ComplexPath::new(Vec::<Complex64>::new(), false).is_err());
        assert!(ComplexPath::new(vec![z, z], false).is_err());
        assert!(ComplexPath::new(vec![z, o, z], true).is_ok());
        assert!(ComplexPath::new(vec![z, o, Complex64::new(0.0, 1.0)], true).is_err());
    }

    #[test]
    fn zero_area_loop_closes() {
        let r = Registry::new(&["x"]);
        let f = PolyVectorField::parse(&r, &["x^2 + 1"]).unwrap();
        let z = Complex64::new(0.0, 0.0);
        let lp = ComplexPath::new(vec![z, Complex64::new(0.3, 0.0), z], true).unwrap();
        let rep = monodromy_probe(&f, &[Complex64::new(0.2, 0.0)], &lp, 1e-13).unwrap();
        assert!(rep.residual < 1e-12);
    }

    #[test]
    fn logarithm_has_monodromy() {
        // x = log t, y = 1/t
        let r = Registry::new(&["x", "y"]);
        let f = PolyVectorField::parse(&r, &["y", "-y^2"]).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let lp = ComplexPath::circle_through(&Complex64::new(0.0, 0.0), &one, 64).unwrap();
        let rep = monodromy_probe(&f, &[Complex64::new(0.0, 0.0), one], &lp, 1e-13).unwrap();
        assert!((rep.residual - 2.0 * std::f64::consts::PI).abs() < 1e-8);
    }
}

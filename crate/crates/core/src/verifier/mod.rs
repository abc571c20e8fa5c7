//! Pass/fail checks for every catalog object, exact where the objects are
//! polynomial or rational and by point sampling otherwise.

mod exact;
mod numeric;
pub mod tower;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use exact::{
    verify_complete_integrability, verify_equivariance, verify_first_integrals, verify_invariant_surface,
    verify_parametrization_exact, verify_structure,
};
pub use numeric::{verify_parametrization_numeric, NumericOverrides};

use crate::algebra::{AlgebraError, MultiPoly, RatFun};
use crate::analytic::AnalyticError;
use crate::catalog::{CatalogError, EquationId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub equation: String,
    pub mode: Mode,
    pub passed: bool,
    /// Largest numeric residual.
    pub residual: Option<f64>,
    /// Residual polynomial of a failed exact check (truncated), or "0".
    pub witness: Option<String>,
    pub tolerance: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub precision: Option<usize>,
    pub note: Option<String>,
}

const WITNESS_LIMIT: usize = 240;

fn truncate(s: String) -> String {
    if s.len() <= WITNESS_LIMIT {
        return s;
    }
    let mut cut = WITNESS_LIMIT;
    while !s.is_char_boundary(cut) {
        cut -= 1;
    }
    format!("{}...", &s[..cut])
}

impl CheckResult {
    pub fn exact(eq: EquationId, id: impl Into<String>, residual: &MultiPoly) -> Self {
        let passed = residual.is_zero();
        Self::exact_bool(eq, id, passed, if passed { "0".into() } else { residual.to_canonical_string() })
    }

    pub fn exact_rat(eq: EquationId, id: impl Into<String>, residual: &RatFun) -> Self {
        Self::exact(eq, id, residual.num())
    }

    pub fn exact_bool(eq: EquationId, id: impl Into<String>, passed: bool, witness: String) -> Self {
        CheckResult {
            check_id: id.into(),
            equation: eq.to_string(),
            mode: Mode::Exact,
            passed,
            residual: None,
            witness: Some(truncate(witness)),
            tolerance: None,
            samples: None,
            seed: None,
            precision: None,
            note: None,
        }
    }

    pub fn numeric(eq: EquationId, id: impl Into<String>, residual: f64, cfg: &VerifyConfig, samples: usize) -> Self {
        CheckResult {
            check_id: id.into(),
            equation: eq.to_string(),
            mode: Mode::Numeric,
            passed: residual.is_finite() && residual < cfg.tol,
            residual: Some(residual),
            witness: None,
            tolerance: Some(cfg.tol),
            samples: Some(samples),
            seed: Some(cfg.seed),
            precision: Some(cfg.precision),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// A check that could not be carried out for an internal reason.
    pub fn error(eq: EquationId, id: impl Into<String>, mode: Mode, err: impl std::fmt::Display) -> Self {
        CheckResult {
            check_id: id.into(),
            equation: eq.to_string(),
            mode,
            passed: false,
            residual: None,
            witness: Some(truncate(format!("error: {err}"))),
            tolerance: None,
            samples: None,
            seed: None,
            precision: None,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Sample count for the Mumford-variety checks; the torus checks use half.
    pub samples: usize,
    pub tol: f64,
    pub precision: usize,
    pub seed: u64,
    pub exact: bool,
    pub numeric: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 100,
            tol: 1e-9,
            precision: 128,
            seed: 0,
            exact: true,
            numeric: true,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error("missing artifact `{0}`")]
    MissingArtifact(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// One JSON object per line: the configuration, then each check, then the summary.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let header = serde_json::json!({ "config": self.config });
        out.push_str(&header.to_string());
        out.push('\n');
        for r in &self.results {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        out.push_str(&serde_json::json!({ "summary": self.summary }).to_string());
        out.push('\n');
        out
    }
}

/// All checks for one equation.
pub fn verify_equation(id: EquationId, cfg: &VerifyConfig) -> Result<Vec<CheckResult>, VerifyError> {
    id.validate()?;
    let mut out = Vec::new();
    if cfg.exact {
        out.extend(verify_structure(id)?);
        out.extend(verify_first_integrals(id)?);
        out.extend(verify_complete_integrability(id)?);
        out.extend(verify_invariant_surface(id)?);
        out.extend(verify_parametrization_exact(id)?);
        out.extend(verify_equivariance(id)?);
    }
    if cfg.numeric {
        out.extend(verify_parametrization_numeric(id, cfg, &NumericOverrides::default())?);
    }
    Ok(out)
}

/// Runs the selected equations (concurrently) and sorts by (equation, check_id).
pub fn full_report(selection: &[EquationId], cfg: &VerifyConfig) -> Result<Report, VerifyError> {
    let mut keyed: Vec<(EquationId, CheckResult)> = selection
        .par_iter()
        .map(|&id| verify_equation(id, cfg).map(|v| v.into_iter().map(move |r| (id, r)).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.check_id.cmp(&b.1.check_id)));
    let results: Vec<CheckResult> = keyed.into_iter().map(|(_, r)| r).collect();
    let passed = results.iter().filter(|r| r.passed).count();
    Ok(Report {
        config: cfg.clone(),
        summary: Summary {
            total: results.len(),
            passed,
            failed: results.len() - passed,
        },
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, CycloNumber, RatFun};
    use crate::catalog::{artifacts, build_equation, xyz};

    fn cfg(samples: usize) -> VerifyConfig {
        VerifyConfig {
            samples,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn perturbed_first_integral_fails() {
        let eq = build_equation(EquationId::VI).unwrap();
        let q = artifacts(EquationId::VI).poly("Q").unwrap().clone();
        assert!(exact::check_first_integral(EquationId::VI, "Q", eq.field(), &q).unwrap().passed);
        let bad = &q + &parse_poly("x", &xyz()).unwrap();
        let r = exact::check_first_integral(EquationId::VI, "Q+x", eq.field(), &bad).unwrap();
        assert!(!r.passed);
        assert_ne!(r.witness.as_deref(), Some("0"));
    }

    #[test]
    fn perturbed_g3_fails() {
        let eq = build_equation(EquationId::VII).unwrap();
        let set = artifacts(EquationId::VII);
        let (p, g2, g3) = (set.poly("P").unwrap(), set.poly("g2").unwrap(), set.poly("g3").unwrap());
        assert!(exact::check_weierstrass(EquationId::VII, eq.field(), p, g2, g3).unwrap().passed);
        let one = MultiPoly::constant(g3.vars(), CycloNumber::one());
        assert!(!exact::check_weierstrass(EquationId::VII, eq.field(), p, g2, &(g3 + &one)).unwrap().passed);
    }

    #[test]
    fn flipped_parametrization_fails() {
        let set = artifacts(EquationId::V);
        let f = set.ratfun("f").unwrap();
        let delta = set.field("Delta").unwrap();
        let (ok, _) = exact::check_delta_ode(EquationId::V, "delta_ode", f, delta, &[]).unwrap();
        assert!(ok.passed);
        let neg = RatFun::new(-f.num(), f.den().clone()).unwrap();
        let (bad, _) = exact::check_delta_ode(EquationId::V, "delta_ode", &neg, delta, &[]).unwrap();
        assert!(!bad.passed);
    }

    #[test]
    fn unit_delta2_scale_fails() {
        let c = cfg(8);
        let good = verify_parametrization_numeric(EquationId::IX, &c, &NumericOverrides::default()).unwrap();
        let push = |v: &[CheckResult]| v.iter().find(|r| r.check_id == "delta2_pushforward").unwrap().clone();
        assert!(push(&good).passed);
        let ov = NumericOverrides {
            delta2_scale: Some(CycloNumber::one()),
            f: None,
        };
        let bad = push(&verify_parametrization_numeric(EquationId::IX, &c, &ov).unwrap());
        assert!(!bad.passed);
        assert!(bad.residual.unwrap() > 1e-3);
    }

    #[test]
    fn selection_and_empty_report() {
        let r = full_report(&[EquationId::IV], &cfg(4)).unwrap();
        assert!(!r.results.is_empty());
        assert!(r.results.iter().all(|c| c.equation == "IV"));
        assert!(r.all_passed());
        let e = full_report(&[], &cfg(4)).unwrap();
        assert!(e.results.is_empty());
        assert_eq!(e.summary.total, 0);
        assert!(e.all_passed());
        assert_eq!(e.to_json_lines().lines().count(), 2);
    }

    #[test]
    fn report_order_is_deterministic() {
        let sel = [EquationId::VIII, EquationId::II, EquationId::VII];
        let a = full_report(&sel, &cfg(4)).unwrap();
        let mut rev = sel;
        rev.reverse();
        let b = full_report(&rev, &cfg(4)).unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
        let ids: Vec<&str> = a.results.iter().map(|r| r.equation.as_str()).collect();
        let first_vii = ids.iter().position(|&e| e == "VII").unwrap();
        assert!(ids[..first_vii].iter().all(|&e| e == "II"));
    }

    #[test]
    fn exact_results_carry_no_tolerance() {
        let r = full_report(&[EquationId::VI], &cfg(4)).unwrap();
        for c in &r.results {
            match c.mode {
                Mode::Exact => assert!(c.tolerance.is_none() && c.samples.is_none()),
                Mode::Numeric => assert!(c.tolerance.is_some() && c.samples.is_some() && c.precision.is_some()),
            }
        }
    }

    #[test]
    fn json_lines_round_trip() {
        let r = full_report(&[EquationId::II], &cfg(4)).unwrap();
        let text = r.to_json_lines();
        let lines: Vec<&str> = text.lines().collect();
        for l in &lines[1..lines.len() - 1] {
            let back: CheckResult = serde_json::from_str(l).unwrap();
            assert!(r.results.contains(&back));
        }
    }
}

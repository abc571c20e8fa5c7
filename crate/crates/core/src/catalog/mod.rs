//! Chazy's equations and the explicit objects attached to each of them.

mod data;
mod mumford;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_poly, AlgebraError, CycloNumber, MultiPoly, Registry};
use crate::fields::PolyVectorField;

pub use data::{artifacts, xii_polynomial, Artifact, ArtifactKind, ArtifactSet, Payload};
pub use mumford::{sample_mumford_points, MumfordVariety};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("{0}")]
    ParameterOutOfRange(String),
    #[error("equation `{0}` is not in the family φ''' = a₃φ⁴ + a₂φ²φ' + a₁φ'² + δφφ''")]
    NotInFamily(String),
    #[error("unknown equation `{0}`")]
    Unknown(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Parameter of the XII family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum XiiParam {
    Finite(i64),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EquationId {
    II,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    Xplus,
    Xminus,
    XI(i64),
    XII(XiiParam),
}

impl EquationId {
    /// Every non-parametric entry, with the default members of the families.
    pub fn all() -> Vec<EquationId> {
        use EquationId::*;
        vec![
            II,
            IV,
            V,
            VI,
            VII,
            VIII,
            IX,
            Xplus,
            Xminus,
            XI(1),
            XI(5),
            XII(XiiParam::Finite(2)),
            XII(XiiParam::Finite(3)),
            XII(XiiParam::Finite(4)),
            XII(XiiParam::Finite(5)),
            XII(XiiParam::Infinity),
        ]
    }

    /// Roman-numeral family name without parameter ("XI", "Xplus", …).
    pub fn family(&self) -> &'static str {
        match self {
            EquationId::II => "II",
            EquationId::IV => "IV",
            EquationId::V => "V",
            EquationId::VI => "VI",
            EquationId::VII => "VII",
            EquationId::VIII => "VIII",
            EquationId::IX => "IX",
            EquationId::Xplus => "Xplus",
            EquationId::Xminus => "Xminus",
            EquationId::XI(_) => "XI",
            EquationId::XII(_) => "XII",
        }
    }

    /// Checks the parameter constraints of the family.
    pub fn validate(&self) -> Result<(), CatalogError> {
        match *self {
            EquationId::XI(k) => {
                if k <= 0 {
                    return Err(CatalogError::ParameterOutOfRange(format!(
                        "XI needs k > 0 (k and -k give the same equation), got {k}"
                    )));
                }
                Ok(())
            }
            EquationId::XII(XiiParam::Finite(k)) => match k {
                0 => Err(CatalogError::ParameterOutOfRange(
                    "XII with k = 0: the eigen-pair (1, 0) has d = 0".into(),
                )),
                1 | -1 => Err(CatalogError::ParameterOutOfRange(
                    "XII with k = 1: the linear part of L - (5/2)V at its zero is not diagonalizable".into(),
                )),
                6 | -6 => Err(CatalogError::ParameterOutOfRange(
                    "XII with k = 6: 1 + k = 7 but 1 - k != 7, no equation of the family realizes it".into(),
                )),
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationId::XI(k) => write!(f, "XI(k={k})"),
            EquationId::XII(XiiParam::Finite(k)) => write!(f, "XII(k={k})"),
            EquationId::XII(XiiParam::Infinity) => write!(f, "XII(k=inf)"),
            other => f.write_str(other.family()),
        }
    }
}

impl FromStr for EquationId {
    type Err = CatalogError;

    /// Accepts "IX", "X+", "Xminus", "XI(k=5)", "XI:5", "XII:inf", …; a bare
    /// "XI" or "XII" is rejected because the parameter is required.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (head, param) = match t.find(['(', ':']) {
            Some(p) => {
                let rest = t[p + 1..].trim_end_matches(')');
                let rest = rest.strip_prefix("k=").unwrap_or(rest);
                (&t[..p], Some(rest.trim()))
            }
            None => (t, None),
        };
        let head = head.trim().to_ascii_uppercase();
        let id = match (head.as_str(), param) {
            ("II", None) => EquationId::II,
            ("IV", None) => EquationId::IV,
            ("V", None) => EquationId::V,
            ("VI", None) => EquationId::VI,
            ("VII", None) => EquationId::VII,
            ("VIII", None) => EquationId::VIII,
            ("IX", None) => EquationId::IX,
            ("X+" | "XPLUS", None) => EquationId::Xplus,
            ("X-" | "XMINUS", None) => EquationId::Xminus,
            ("XI", Some(p)) => EquationId::XI(p.parse().map_err(|_| CatalogError::Unknown(s.to_string()))?),
            ("XII", Some(p)) => {
                if p.eq_ignore_ascii_case("inf") || p == "∞" {
                    EquationId::XII(XiiParam::Infinity)
                } else {
                    EquationId::XII(XiiParam::Finite(
                        p.parse().map_err(|_| CatalogError::Unknown(s.to_string()))?,
                    ))
                }
            }
            ("I" | "III" | "XIII", _) => return Err(CatalogError::NotInFamily(s.to_string())),
            _ => return Err(CatalogError::Unknown(s.to_string())),
        };
        id.validate()?;
        Ok(id)
    }
}

/// The phase-space registry (x, y, z) = (φ, φ', φ'').
pub fn xyz() -> Registry {
    Registry::new(&["x", "y", "z"])
}

/// Extracts (a₁, a₂, a₃, δ) from a right-hand side F(x, y, z), failing if F
/// has any monomial outside y², x²y, x⁴, xz. Parameters past z are allowed.
pub fn coefficients_of_rhs(rhs: &MultiPoly) -> Result<[MultiPoly; 4], CatalogError> {
    let vars = rhs.vars().clone();
    let pattern: [[u32; 3]; 4] = [[0, 2, 0], [2, 1, 0], [4, 0, 0], [1, 0, 1]];
    let mut out: [Vec<(crate::algebra::Monomial, CycloNumber)>; 4] = Default::default();
    for (m, c) in rhs.terms() {
        let head = [m.0[0], m.0[1], m.0[2]];
        let slot = pattern
            .iter()
            .position(|p| *p == head)
            .ok_or_else(|| CatalogError::NotInFamily(rhs.to_canonical_string()))?;
        let mut rest = m.0.clone();
        rest[0] = 0;
        rest[1] = 0;
        rest[2] = 0;
        out[slot].push((crate::algebra::Monomial(rest), c.clone()));
    }
    let [a1, a2, a3, d] = out;
    Ok([
        MultiPoly::from_terms(&vars, a1),
        MultiPoly::from_terms(&vars, a2),
        MultiPoly::from_terms(&vars, a3),
        MultiPoly::from_terms(&vars, d),
    ])
}

/// A member of the family with numeric coefficients.
#[derive(Clone, Debug)]
pub struct ChazyEquation {
    pub id: EquationId,
    /// (a₁, a₂, a₃, δ).
    pub coeffs: [CycloNumber; 4],
    pub rhs_source: String,
    field: PolyVectorField,
}

impl ChazyEquation {
    pub fn field(&self) -> &PolyVectorField {
        &self.field
    }

    pub fn vars(&self) -> &Registry {
        self.field.vars()
    }

    /// a₃x⁴ + a₂x²y + a₁y² + δxz.
    pub fn rhs(&self) -> &MultiPoly {
        self.field.component(2)
    }

    pub fn a1(&self) -> &CycloNumber {
        &self.coeffs[0]
    }
    pub fn a2(&self) -> &CycloNumber {
        &self.coeffs[1]
    }
    pub fn a3(&self) -> &CycloNumber {
        &self.coeffs[2]
    }
    pub fn delta(&self) -> &CycloNumber {
        &self.coeffs[3]
    }

    /// Field with numeric coefficients.
    pub fn from_coeffs(id: EquationId, coeffs: [CycloNumber; 4]) -> Self {
        let r = xyz();
        let k = |c: &CycloNumber| MultiPoly::constant(&r, c.clone());
        let field = PolyVectorField::chazy(&r, &k(&coeffs[0]), &k(&coeffs[1]), &k(&coeffs[2]), &k(&coeffs[3]));
        let rhs_source = field.component(2).to_canonical_string();
        ChazyEquation {
            id,
            coeffs,
            rhs_source,
            field,
        }
    }

    /// Artifacts attached to this equation.
    pub fn artifacts(&self) -> ArtifactSet {
        artifacts(self.id)
    }
}

/// The XI and XII families with the parameter kept symbolic.
#[derive(Clone, Debug)]
pub struct ParametricEquation {
    pub family: &'static str,
    /// Name of the parameter in the registry: "k" for XI, "c" for XII with
    /// c = 4/(36 − k²).
    pub param: &'static str,
    pub coeffs: [MultiPoly; 4],
    field: PolyVectorField,
}

impl ParametricEquation {
    pub fn field(&self) -> &PolyVectorField {
        &self.field
    }

    pub fn vars(&self) -> &Registry {
        self.field.vars()
    }

    pub fn xi() -> Self {
        let r = Registry::new(&["x", "y", "z", "k"]);
        let rhs = parse_poly(RHS_XI, &r).expect("XI right-hand side");
        Self::from_rhs("XI", "k", &r, &rhs)
    }

    pub fn xii() -> Self {
        let r = Registry::new(&["x", "y", "z", "c"]);
        let rhs = parse_poly(RHS_XII, &r).expect("XII right-hand side");
        Self::from_rhs("XII", "c", &r, &rhs)
    }

    fn from_rhs(family: &'static str, param: &'static str, r: &Registry, rhs: &MultiPoly) -> Self {
        let coeffs = coefficients_of_rhs(rhs).expect("family right-hand side");
        let field = PolyVectorField::chazy(r, &coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]);
        ParametricEquation {
            family,
            param,
            coeffs,
            field,
        }
    }
}

const RHS_II: &str = "2*x*z + 2*y^2";
const RHS_IV: &str = "3*x*z + 3*y^2 - 3*x^2*y";
const RHS_V: &str = "2*x*z + 4*y^2 - 2*x^2*y";
const RHS_VI: &str = "x*z + 5*y^2 - x^2*y";
const RHS_VII: &str = "x*z + 2*x^2*y + 2*y^2";
const RHS_VIII: &str = "6*x^2*y";
const RHS_IX: &str = "18*(y + x^2)*(y + 3*x^2) - 6*y^2";
const RHS_X: &str = "6*x^2*y + 3*(9 + 7*sqrt3)/11*(y + x^2)^2";
/// With κ = 1 − k² written out.
const RHS_XI: &str = "(1 - k^2)/2*x*z + ((1 - k^2)/2 + 6)*y^2 - 3*(1 - k^2)*x^2*y + 3/8*(1 - k^2)^2*x^4";
const RHS_XII: &str = "2*x*z - 3*y^2 + c*(6*y - x^2)^2";
const RHS_XII_INF: &str = "2*x*z - 3*y^2";

/// Builds an equation by expanding its right-hand side.
pub fn build_equation(id: EquationId) -> Result<ChazyEquation, CatalogError> {
    id.validate()?;
    let r = xyz();
    let numeric = |src: &str| -> Result<[CycloNumber; 4], CatalogError> {
        let rhs = parse_poly(src, &r)?;
        let c = coefficients_of_rhs(&rhs)?;
        Ok(c.map(|p| p.as_constant().unwrap_or_else(CycloNumber::zero)))
    };
    let coeffs = match id {
        EquationId::II => numeric(RHS_II)?,
        EquationId::IV => numeric(RHS_IV)?,
        EquationId::V => numeric(RHS_V)?,
        EquationId::VI => numeric(RHS_VI)?,
        EquationId::VII => numeric(RHS_VII)?,
        EquationId::VIII => numeric(RHS_VIII)?,
        EquationId::IX => numeric(RHS_IX)?,
        EquationId::Xplus => numeric(RHS_X)?,
        EquationId::Xminus => numeric(RHS_X)?.map(|c| c.galois(XMINUS_GALOIS)),
        EquationId::XI(k) => ParametricEquation::xi()
            .coeffs
            .map(|p| p.eval_exact(&[CycloNumber::zero(), CycloNumber::zero(), CycloNumber::zero(), CycloNumber::from_int(k)])),
        EquationId::XII(XiiParam::Finite(k)) => {
            let c = CycloNumber::frac(4, 36 - k * k);
            ParametricEquation::xii()
                .coeffs
                .map(|p| p.eval_exact(&[CycloNumber::zero(), CycloNumber::zero(), CycloNumber::zero(), c.clone()]))
        }
        EquationId::XII(XiiParam::Infinity) => numeric(RHS_XII_INF)?,
    };
    let mut eq = ChazyEquation::from_coeffs(id, coeffs);
    eq.rhs_source = match id {
        EquationId::II => RHS_II,
        EquationId::IV => RHS_IV,
        EquationId::V => RHS_V,
        EquationId::VI => RHS_VI,
        EquationId::VII => RHS_VII,
        EquationId::VIII => RHS_VIII,
        EquationId::IX => RHS_IX,
        EquationId::Xplus | EquationId::Xminus => RHS_X,
        EquationId::XI(_) => RHS_XI,
        EquationId::XII(XiiParam::Finite(_)) => RHS_XII,
        EquationId::XII(XiiParam::Infinity) => RHS_XII_INF,
    }
    .to_string();
    Ok(eq)
}

/// The automorphism ζ₆₀ ↦ ζ₆₀⁴¹ fixes i and √5 and sends √3 to −√3.
pub const XMINUS_GALOIS: usize = 41;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;

    fn ints(v: [i64; 4]) -> [CycloNumber; 4] {
        v.map(CycloNumber::from_int)
    }

    #[test]
    fn rational_coefficients() {
        assert_eq!(build_equation(EquationId::II).unwrap().coeffs, ints([2, 0, 0, 2]));
        assert_eq!(build_equation(EquationId::IV).unwrap().coeffs, ints([3, -3, 0, 3]));
        assert_eq!(build_equation(EquationId::V).unwrap().coeffs, ints([4, -2, 0, 2]));
        assert_eq!(build_equation(EquationId::VI).unwrap().coeffs, ints([5, -1, 0, 1]));
        assert_eq!(build_equation(EquationId::VII).unwrap().coeffs, ints([2, 2, 0, 1]));
        assert_eq!(build_equation(EquationId::VIII).unwrap().coeffs, ints([0, 6, 0, 0]));
        assert_eq!(
            build_equation(EquationId::XII(XiiParam::Infinity)).unwrap().coeffs,
            ints([-3, 0, 0, 2])
        );
    }

    #[test]
    fn ix_expansion_matches_hand_expansion() {
        // 18(y + x²)(y + 3x²) = 18y² + 72x²y + 54x⁴
        let eq = build_equation(EquationId::IX).unwrap();
        assert_eq!(eq.coeffs, ints([12, 72, 54, 0]));
    }

    #[test]
    fn x_coefficients() {
        let cx = (&CycloNumber::from_int(27) + &c("sqrt3").scale_int(21)).scale_rational(&crate::algebra::q(1, 11));
        let plus = build_equation(EquationId::Xplus).unwrap();
        assert_eq!(plus.coeffs[0], cx);
        assert_eq!(plus.coeffs[1], &CycloNumber::from_int(6) + &cx.scale_int(2));
        assert_eq!(plus.coeffs[2], cx);
        assert!(plus.coeffs[3].is_zero());
        let minus = build_equation(EquationId::Xminus).unwrap();
        let cm = (&CycloNumber::from_int(27) - &c("sqrt3").scale_int(21)).scale_rational(&crate::algebra::q(1, 11));
        assert_eq!(minus.coeffs[0], cm);
        assert_eq!(c("sqrt3").galois(XMINUS_GALOIS), -c("sqrt3"));
        assert_eq!(c("i").galois(XMINUS_GALOIS), c("i"));
    }

    #[test]
    fn xi_and_xii_members() {
        let xi1 = build_equation(EquationId::XI(1)).unwrap();
        assert_eq!(xi1.coeffs, ints([6, 0, 0, 0]));
        let xi3 = build_equation(EquationId::XI(3)).unwrap();
        // κ = −8: (κ/2 + 6, −3κ, 3κ²/8, κ/2)
        assert_eq!(xi3.coeffs, ints([2, 24, 24, -4]));
        let xii2 = build_equation(EquationId::XII(XiiParam::Finite(2))).unwrap();
        let c2 = CycloNumber::frac(1, 8);
        assert_eq!(
            xii2.coeffs,
            [
                &CycloNumber::from_int(-3) + &c2.scale_int(36),
                c2.scale_int(-12),
                c2.clone(),
                CycloNumber::from_int(2)
            ]
        );
    }

    #[test]
    fn parameter_guards() {
        for k in [0, 1, 6, -6] {
            assert!(build_equation(EquationId::XII(XiiParam::Finite(k))).is_err());
        }
        assert!(build_equation(EquationId::XII(XiiParam::Finite(7))).is_ok());
        assert!(matches!("XIII".parse::<EquationId>(), Err(CatalogError::NotInFamily(_))));
        assert_eq!("XI(k=5)".parse::<EquationId>().unwrap(), EquationId::XI(5));
        assert_eq!("xii:inf".parse::<EquationId>().unwrap(), EquationId::XII(XiiParam::Infinity));
        assert_eq!("X-".parse::<EquationId>().unwrap(), EquationId::Xminus);
        assert!("XII".parse::<EquationId>().is_err());
        for id in EquationId::all() {
            assert_eq!(id.to_string().parse::<EquationId>().unwrap(), id);
        }
    }

    #[test]
    fn quasihomogeneity_everywhere() {
        let r = xyz();
        let l = PolyVectorField::weight_field(&r);
        for id in EquationId::all() {
            let v = build_equation(id).unwrap();
            assert_eq!(l.bracket(v.field()).unwrap(), *v.field(), "{id}");
        }
        for p in [ParametricEquation::xi(), ParametricEquation::xii()] {
            let l = PolyVectorField::weight_field(p.vars());
            assert_eq!(l.bracket(p.field()).unwrap(), *p.field());
        }
    }

    #[test]
    fn rhs_outside_family_is_rejected() {
        let r = xyz();
        let p = parse_poly("12*x*y", &r).unwrap();
        assert!(matches!(coefficients_of_rhs(&p), Err(CatalogError::NotInFamily(_))));
    }
}

//! Transcribed objects: first integrals, commuting fields, invariant
//! surfaces, symmetries and parametrizations.

use serde::Serialize;

use super::{EquationId, XiiParam, XMINUS_GALOIS};
use crate::algebra::{parse_poly, parse_ratfun, CycloNumber, MultiPoly, RatFun, Registry};
use crate::fields::PolyVectorField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ArtifactKind {
    FirstIntegral,
    CommutingField,
    InvariantSurface,
    Symmetry,
    Parametrization,
    ClosedFormSolution,
    /// Supporting objects: charts, factors, changes of variables, constants.
    Auxiliary,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Poly(MultiPoly),
    RatFun(RatFun),
    Field(PolyVectorField),
    /// Components over the source registry, naming the target coordinates.
    Map { comps: Vec<RatFun>, target: Registry },
    Scalars(Vec<CycloNumber>),
    Text(String),
}

impl Payload {
    /// Canonical strings, one per component.
    pub fn canonical_strings(&self) -> Vec<String> {
        match self {
            Payload::Poly(p) => vec![p.to_canonical_string()],
            Payload::RatFun(r) => vec![ratfun_string(r)],
            Payload::Field(f) => f.to_canonical_strings(),
            Payload::Map { comps, .. } => comps.iter().map(ratfun_string).collect(),
            Payload::Scalars(v) => v.iter().map(|c| c.to_string()).collect(),
            Payload::Text(s) => vec![s.clone()],
        }
    }

    /// Source registry of the payload, if it has one.
    pub fn registry(&self) -> Option<Registry> {
        match self {
            Payload::Poly(p) => Some(p.vars().clone()),
            Payload::RatFun(r) => Some(r.vars().clone()),
            Payload::Field(f) => Some(f.vars().clone()),
            Payload::Map { comps, .. } => comps.first().map(|c| c.vars().clone()),
            Payload::Scalars(_) | Payload::Text(_) => None,
        }
    }

    /// Parses `strings` back into a payload of the same shape.
    pub fn reparse(&self, strings: &[String]) -> Result<Payload, crate::algebra::AlgebraError> {
        let empty = Registry::new::<&str>(&[]);
        Ok(match self {
            Payload::Poly(p) => Payload::Poly(parse_poly(&strings[0], p.vars())?),
            Payload::RatFun(r) => Payload::RatFun(parse_ratfun(&strings[0], r.vars())?),
            Payload::Field(f) => {
                let polys = strings
                    .iter()
                    .map(|s| parse_poly(s, f.vars()))
                    .collect::<Result<Vec<_>, _>>()?;
                Payload::Field(PolyVectorField::new(f.vars(), polys)?)
            }
            Payload::Map { comps, target } => {
                let r = comps[0].vars().clone();
                let comps = strings
                    .iter()
                    .map(|s| parse_ratfun(s, &r))
                    .collect::<Result<Vec<_>, _>>()?;
                Payload::Map {
                    comps,
                    target: target.clone(),
                }
            }
            Payload::Scalars(_) => Payload::Scalars(
                strings
                    .iter()
                    .map(|s| {
                        parse_poly(s, &empty).map(|p| p.as_constant().unwrap_or_else(CycloNumber::zero))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            Payload::Text(_) => Payload::Text(strings[0].clone()),
        })
    }

    /// Structural equality (rational functions compared by cross-multiplication).
    pub fn same_as(&self, o: &Payload) -> bool {
        match (self, o) {
            (Payload::Poly(a), Payload::Poly(b)) => a == b,
            (Payload::RatFun(a), Payload::RatFun(b)) => a.equals(b),
            (Payload::Field(a), Payload::Field(b)) => a == b,
            (Payload::Map { comps: a, .. }, Payload::Map { comps: b, .. }) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equals(y))
            }
            (Payload::Scalars(a), Payload::Scalars(b)) => a == b,
            (Payload::Text(a), Payload::Text(b)) => a == b,
            _ => false,
        }
    }

    fn map_coeffs(&self, g: impl Fn(&CycloNumber) -> CycloNumber + Copy) -> Payload {
        match self {
            Payload::Poly(p) => Payload::Poly(p.map_coeffs(g)),
            Payload::RatFun(r) => Payload::RatFun(r.map_coeffs(g)),
            Payload::Field(f) => Payload::Field(f.map_coeffs(g)),
            Payload::Map { comps, target } => Payload::Map {
                comps: comps.iter().map(|c| c.map_coeffs(g)).collect(),
                target: target.clone(),
            },
            Payload::Scalars(v) => Payload::Scalars(v.iter().map(g).collect()),
            Payload::Text(s) => Payload::Text(s.clone()),
        }
    }
}

fn ratfun_string(r: &RatFun) -> String {
    if r.den().as_constant().is_some_and(|c| c.is_one()) {
        r.num().to_canonical_string()
    } else {
        format!("({}) / ({})", r.num().to_canonical_string(), r.den().to_canonical_string())
    }
}

#[derive(Clone, Debug)]
pub struct Artifact {
    pub kind: ArtifactKind,
    pub name: String,
    /// Subsection the object belongs to, e.g. "Chazy IV".
    pub section: String,
    pub payload: Payload,
    /// Ideal generators of the variety the payload lives on, if any.
    pub variety: Option<Vec<MultiPoly>>,
    /// Set on the literal reading of a formula that the build corrects.
    pub as_printed: bool,
}

/// The artifacts of one equation, looked up by name.
#[derive(Clone, Debug, Default)]
pub struct ArtifactSet {
    pub items: Vec<Artifact>,
}

impl ArtifactSet {
    pub fn get(&self, name: &str) -> Option<&Artifact> {
        self.items.iter().find(|a| a.name == name)
    }

    pub fn of_kind(&self, kind: ArtifactKind) -> impl Iterator<Item = &Artifact> {
        self.items.iter().filter(move |a| a.kind == kind && !a.as_printed)
    }

    pub fn poly(&self, name: &str) -> Option<&MultiPoly> {
        match &self.get(name)?.payload {
            Payload::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn ratfun(&self, name: &str) -> Option<&RatFun> {
        match &self.get(name)?.payload {
            Payload::RatFun(r) => Some(r),
            _ => None,
        }
    }

    pub fn field(&self, name: &str) -> Option<&PolyVectorField> {
        match &self.get(name)?.payload {
            Payload::Field(f) => Some(f),
            _ => None,
        }
    }

    pub fn map(&self, name: &str) -> Option<&[RatFun]> {
        match &self.get(name)?.payload {
            Payload::Map { comps, .. } => Some(comps),
            _ => None,
        }
    }

    pub fn scalars(&self, name: &str) -> Option<&[CycloNumber]> {
        match &self.get(name)?.payload {
            Payload::Scalars(v) => Some(v),
            _ => None,
        }
    }

    pub fn scalar(&self, name: &str) -> Option<&CycloNumber> {
        self.scalars(name).and_then(|v| v.first())
    }

    /// First integrals, excluding printed variants.
    pub fn first_integrals(&self) -> Vec<&Artifact> {
        self.of_kind(ArtifactKind::FirstIntegral).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn push(&mut self, kind: ArtifactKind, name: &str, section: &str, payload: Payload) -> &mut Artifact {
        self.items.push(Artifact {
            kind,
            name: name.to_string(),
            section: section.to_string(),
            payload,
            variety: None,
            as_printed: false,
        });
        self.items.last_mut().expect("just pushed")
    }
}

fn reg(names: &[&str]) -> Registry {
    Registry::new(names)
}

fn poly(src: &str, r: &Registry) -> Payload {
    Payload::Poly(parse_poly(src, r).unwrap_or_else(|e| panic!("catalog polynomial `{src}`: {e}")))
}

fn rat(src: &str, r: &Registry) -> Payload {
    Payload::RatFun(parse_ratfun(src, r).unwrap_or_else(|e| panic!("catalog rational function `{src}`: {e}")))
}

fn field(comps: &[&str], r: &Registry) -> Payload {
    Payload::Field(PolyVectorField::parse(r, comps).unwrap_or_else(|e| panic!("catalog field {comps:?}: {e}")))
}

fn map(comps: &[&str], r: &Registry, target: &[&str]) -> Payload {
    let comps = comps
        .iter()
        .map(|s| parse_ratfun(s, r).unwrap_or_else(|e| panic!("catalog map `{s}`: {e}")))
        .collect();
    Payload::Map {
        comps,
        target: reg(target),
    }
}

fn scalars(srcs: &[&str]) -> Payload {
    let r = reg(&[]);
    Payload::Scalars(
        srcs.iter()
            .map(|s| {
                parse_poly(s, &r)
                    .unwrap_or_else(|e| panic!("catalog constant `{s}`: {e}"))
                    .as_constant()
                    .unwrap_or_else(CycloNumber::zero)
            })
            .collect(),
    )
}

use ArtifactKind::*;

/// All artifacts attached to an equation.
pub fn artifacts(id: EquationId) -> ArtifactSet {
    match id {
        EquationId::II => chazy_ii(),
        EquationId::IV => chazy_iv(),
        EquationId::V => chazy_v(),
        EquationId::VI => chazy_vi(),
        EquationId::VII => chazy_vii(),
        EquationId::VIII => chazy_viii(),
        EquationId::IX => chazy_ix(),
        EquationId::Xplus => chazy_x(),
        EquationId::Xminus => {
            let mut s = chazy_x();
            for a in &mut s.items {
                a.payload = a.payload.map_coeffs(|c| c.galois(XMINUS_GALOIS));
                if let Some(v) = &mut a.variety {
                    *v = v.iter().map(|p| p.map_coeffs(|c| c.galois(XMINUS_GALOIS))).collect();
                }
                a.section = "Chazy X (other determination of √3)".into();
            }
            s
        }
        EquationId::XI(_) => chazy_xi(),
        EquationId::XII(k) => chazy_xii(k),
    }
}

/// Diagonal map (λx, λ²y, λ³z) with λ given as parser source.
fn diagonal(lambda: &str) -> Payload {
    let r = reg(&["x", "y", "z"]);
    map(
        &[
            &format!("({lambda})*x"),
            &format!("({lambda})^2*y"),
            &format!("({lambda})^3*z"),
        ],
        &r,
        &["x", "y", "z"],
    )
}

fn symmetry(s: &mut ArtifactSet, sec: &str, lambda: &str, order: i64) {
    s.push(Symmetry, "S", sec, diagonal(lambda));
    s.push(Symmetry, "lambda", sec, scalars(&[lambda]));
    s.push(Symmetry, "order", sec, scalars(&[&order.to_string()]));
}

fn chazy_ii() -> ArtifactSet {
    let sec = "Chazy II";
    let r = reg(&["x", "y", "z"]);
    let t = reg(&["X", "Y", "Z"]);
    let mut s = ArtifactSet::default();
    s.push(FirstIntegral, "Z", sec, poly("z - 2*x*y", &r));
    s.push(Auxiliary, "change", sec, map(&["x", "y - x^2", "z - 2*x*y"], &r, &["X", "Y", "Z"]));
    s.push(Auxiliary, "transformed", sec, field(&["X^2 + Y", "Z", "0"], &t));
    symmetry(&mut s, sec, "rho3", 3);
    s
}

fn chazy_iv() -> ArtifactSet {
    let sec = "Chazy IV";
    let r = reg(&["x", "y", "z"]);
    let r2 = reg(&["x", "y"]);
    let src = reg(&["xi", "zeta"]);
    let mut s = ArtifactSet::default();
    s.push(FirstIntegral, "Q", sec, poly("x^3 - 3*y*x + z", &r));
    s.push(InvariantSurface, "H", sec, poly("3*y^2*x^2 - y^3 - 3*x*y*z + z^2", &r));
    s.push(Auxiliary, "l1", sec, poly("x^2 - y + x + 1", &r));
    s.push(Auxiliary, "l2", sec, poly("x^2 - y + rho3^2*x + rho3", &r));
    s.push(Auxiliary, "l3", sec, poly("x^2 - y + rho3*x + rho3^2", &r));
    s.push(Auxiliary, "level", sec, scalars(&["1"]));
    s.push(Auxiliary, "chart", sec, rat("1 + 3*x*y - x^3", &r2));
    s.push(Auxiliary, "chart", sec, rat("3*x*y - x^3", &r2)).as_printed = true;
    s.push(Parametrization, "f", sec, rat("(xi + rho3*zeta + rho3^2)/(xi + rho3^2*zeta + rho3)", &src));
    s.push(
        Parametrization,
        "f",
        sec,
        rat("(rho3 + 1)*(rho3^2*zeta - rho3*xi + 1)/(rho3 + rho3^2*zeta + xi)", &src),
    )
    .as_printed = true;
    s.push(Parametrization, "Delta", sec, field(&["(rho3 - 1)*xi", "(2*rho3 + 1)*zeta"], &src));
    let l1 = "(x^2 - y + x + 1)";
    let l2 = "(x^2 - y + rho3^2*x + rho3)";
    let l3 = "(x^2 - y + rho3*x + rho3^2)";
    s.push(
        Parametrization,
        "inverse",
        sec,
        map(&[&format!("{l1}/{l3}"), &format!("{l2}/{l3}")], &r, &["xi", "zeta"]),
    );
    symmetry(&mut s, sec, "rho3", 3);
    s.push(Symmetry, "T", sec, map(&["zeta/xi", "1/xi"], &src, &["xi", "zeta"]));
    s
}

fn chazy_v() -> ArtifactSet {
    let sec = "Chazy V";
    let r = reg(&["x", "y", "z"]);
    let r2 = reg(&["x", "y"]);
    let src = reg(&["xi", "zeta"]);
    let mut s = ArtifactSet::default();
    s.push(FirstIntegral, "Q", sec, poly("x^4 - 4*x^2*y + 2*z*x - y^2", &r));
    s.push(InvariantSurface, "H", sec, poly("2*y^2*x^2 - 2*x*y*z + z^2 - 2*y^3", &r));
    let cs = [
        "x^2 + x + i + i*x - y",
        "x^2 - i*x - i + x - y",
        "x^2 - x + i - i*x - y",
        "x^2 + i*x - i - x - y",
    ];
    for (j, c) in cs.iter().enumerate() {
        s.push(Auxiliary, &format!("C{}", j + 1), sec, poly(c, &r));
    }
    s.push(Auxiliary, "chart", sec, rat("(1 - x^4 + 4*x^2*y + y^2)/(2*x)", &r2));
    s.push(Parametrization, "f", sec, rat("(xi - 1)*(zeta - 1)/(xi*zeta + i*xi - i*zeta - 1)", &src));
    s.push(Parametrization, "f", sec, rat("(xi - 1)*(zeta - 1)/(xi*zeta - i*xi - i*zeta + 1)", &src))
        .as_printed = true;
    s.push(Parametrization, "Delta", sec, field(&["(i - 1)*i*xi", "(i - 1)*zeta"], &src));
    s.push(
        Parametrization,
        "inverse",
        sec,
        map(
            &[&format!("({})/({})", cs[0], cs[2]), &format!("({})/({})", cs[1], cs[3])],
            &r,
            &["xi", "zeta"],
        ),
    );
    symmetry(&mut s, sec, "i", 4);
    s.push(Symmetry, "T", sec, map(&["zeta", "1/xi"], &src, &["xi", "zeta"]));
    s
}

fn chazy_vi() -> ArtifactSet {
    let sec = "Chazy VI";
    let r = reg(&["x", "y", "z"]);
    let src = reg(&["xi", "zeta"]);
    let mut s = ArtifactSet::default();
    s.push(
        FirstIntegral,
        "Q",
        sec,
        poly("x^6 - 6*x^4*y + 6*z*x^3 - 15*x^2*y^2 + 6*x*y*z + 8*y^3 - 3*z^2", &r),
    );
    s.push(InvariantSurface, "H", sec, poly("y^2*x^2 - 3*y^3 - x*y*z + z^2", &r));
    s.push(
        Parametrization,
        "f",
        sec,
        rat(
            "(xi*(1 - zeta^2) + rho3*(zeta^2 - xi^2) + rho3^2*zeta*(xi^2 - 1))\
             /(xi^2*zeta + xi*zeta^2 + zeta^2 + zeta + xi + xi^2 - 6*xi*zeta)",
            &src,
        ),
    );
    s.push(Parametrization, "Delta", sec, field(&["-rho3^2*xi", "zeta"], &src));
    symmetry(&mut s, sec, "-rho3^2", 6);
    s.push(Symmetry, "T", sec, map(&["zeta", "zeta/xi"], &src, &["xi", "zeta"]));
    s
}

fn chazy_vii() -> ArtifactSet {
    let sec = "Chazy VII";
    let r = reg(&["x", "y", "z"]);
    let mut s = ArtifactSet::default();
    s.push(FirstIntegral, "g2", sec, poly("4/3*(x^4 + 2*x^2*y + y^2 - 2*x*z)", &r));
    s.push(
        FirstIntegral,
        "g3",
        sec,
        poly("-4/27*(2*x^6 + 6*x^4*y + 6*y^2*x^2 - 2*y^3 - 6*x^3*z - 6*z*x*y + 3*z^2)", &r),
    );
    s.push(Auxiliary, "P", sec, poly("x^2/3 + 2*y/3", &r));
    s
}

fn chazy_viii() -> ArtifactSet {
    let sec = "Chazy VIII";
    let r = reg(&["x", "y", "z"]);
    let mut s = ArtifactSet::default();
    s.push(FirstIntegral, "a", sec, poly("z - 2*x^3", &r));
    s.push(FirstIntegral, "b", sec, poly("y^2 - 2*z*x + 3*x^4", &r));
    s
}

pub(crate) const MUMFORD_VARS: [&str; 4] = ["u1", "u2", "v1", "v2"];
pub(crate) const MUMFORD_G1: &str = "-1 - 2*u2^2*u1 + u2*u1^3 + u2*v1^2 - v2^2";
pub(crate) const MUMFORD_G2: &str = "-2*v1*v2 + u2^2 - 3*u2*u1^2 + u1^4 + u1*v1^2";

fn chazy_ix() -> ArtifactSet {
    let sec = "Chazy IX";
    let r = reg(&["x", "y", "z"]);
    let src = reg(&MUMFORD_VARS);
    let g = vec![
        parse_poly(MUMFORD_G1, &src).expect("g1"),
        parse_poly(MUMFORD_G2, &src).expect("g2"),
    ];
    let mut s = ArtifactSet::default();
    s.push(
        FirstIntegral,
        "Q",
        sec,
        poly(
            "-10*x*z^3 + 5*(36*x^4 + y^2)*z^2 + 60*(27*x^4 + 12*y*x^2 + 2*y^2)*x*y*z \
             + 2916*x^10 - 48*(3*x^2 + y)^5",
            &r,
        ),
    );
    s.push(
        CommutingField,
        "W",
        sec,
        field(
            &[
                "36*x^4 + 12*x^2*y + 2*y^2 - 3*x*z",
                "y*z - 162*x^5 - 72*x^3*y - 12*y^2*x + 12*z*x^2",
                "648*x^6 + 108*x^4*y - 72*x^3*z + z^2",
            ],
            &r,
        ),
    );
    s.push(CommutingField, "W_weight", sec, scalars(&["3"]));
    s.push(Auxiliary, "g1", sec, poly(MUMFORD_G1, &src));
    s.push(Auxiliary, "g2", sec, poly(MUMFORD_G2, &src));
    s.push(
        Parametrization,
        "f",
        sec,
        rat("(sqrt5 - 1)/6*(u1*v1 - 2*v2)/(2*u1^2 + (sqrt5 - 3)*u2)", &src),
    )
    .variety = Some(g.clone());
    s.push(
        Parametrization,
        "Delta1",
        sec,
        field(&["v1", "v2", "u2 - 3/2*u1^2", "v1^2/2 + u1^3/2 - 2*u1*u2"], &src),
    )
    .variety = Some(g.clone());
    s.push(
        Parametrization,
        "Delta2",
        sec,
        field(
            &[
                "v2",
                "v2*u1 - u2*v1",
                "v1^2/2 + u1^3/2 - 2*u1*u2",
                "(u1^4 - u2*u1^2 + u1*v1^2 - 2*u2^2)/2",
            ],
            &src,
        ),
    )
    .variety = Some(g.clone());
    s.push(Parametrization, "Delta2_scale", sec, scalars(&["5/12 - sqrt5/4"]));
    let inv = [
        "-3/5*(5 + sqrt5)*(6*x^2 + (1 + sqrt5)*y)",
        "18/5*((12 + 4*sqrt5)*y^2 + 72*x^4 + 24*x^2*y - 2*(5 + sqrt5)*x*z)",
        "-3/5*(5 + sqrt5)*((1 + sqrt5)*z + 12*x*y)",
        "-36/25*(5 + sqrt5)*(270*x^5 + 36*(5 + sqrt5)*x^3*y + (3*sqrt5 - 15)*z*x^2 \
         + 6*(5 + sqrt5)*y^2*x - (5 + 2*sqrt5)*z*y)",
    ];
    s.push(Parametrization, "inverse", sec, map(&inv, &r, &MUMFORD_VARS));
    let printed = [
        inv[0],
        "18/5*((27 + 4*sqrt5)*y^2 + 162*x^4 + 54*x^2*y - 2*(5 + sqrt5)*y*z)",
        inv[2],
        inv[3],
    ];
    s.push(Parametrization, "inverse", sec, map(&printed, &r, &MUMFORD_VARS)).as_printed = true;
    symmetry(&mut s, sec, "-omega5", 10);
    s.push(
        Symmetry,
        "T",
        sec,
        map(&["omega5*u1", "omega5^2*u2", "-omega5^4*v1", "-v2"], &src, &MUMFORD_VARS),
    );
    s
}

pub(crate) const TORUS_VARS: [&str; 4] = ["U1", "P1", "U2", "P2"];
const RHO1: &str = "((1 + i + sqrt3 + i*sqrt3)/2)";
const RHO2: &str = "((1 + i - sqrt3 - i*sqrt3)/2)";

fn chazy_x() -> ArtifactSet {
    let sec = "Chazy X";
    let r = reg(&["x", "y", "z"]);
    let src = reg(&TORUS_VARS);
    let curves = vec![
        parse_poly("P1^2 - 1 + U1^4", &src).expect("curve"),
        parse_poly("P2^2 - 1 + U2^4", &src).expect("curve"),
    ];
    let mut s = ArtifactSet::default();
    s.push(
        FirstIntegral,
        "Q",
        sec,
        poly(
            "(94392 + 52164*sqrt3)*x^12 + (263088*sqrt3 + 423792)*x^10*y \
             + (322704*sqrt3 + 617544)*x^8*y^2 + (388584 + 254712*sqrt3)*x^6*y^3 \
             + (66492*sqrt3 + 143136)*x^4*y^4 + (5688*sqrt3 + 3240)*x^2*y^5 \
             + (-8480 - 4992*sqrt3)*y^6 + (-127512*sqrt3 - 163944)*x^7*y*z \
             + (-77616*sqrt3 - 221760)*x^5*y^2*z + (-56232 - 63096*sqrt3)*x^3*y^3*z \
             + (-10032 + 3168*sqrt3)*x*y^4*z + (-16632*sqrt3 - 47520)*x^6*z^2 \
             + (15444*sqrt3 + 1188)*x^4*y*z^2 + (20064 - 6336*sqrt3)*x^2*y^2*z^2 \
             + (396 + 5148*sqrt3)*y^3*z^2 + 22264*x^3*z^3 + (1815*sqrt3 - 4356)*z^4",
            &r,
        ),
    );
    s.push(
        CommutingField,
        "W",
        sec,
        field(
            &[
                "(540 + 288*sqrt3)*x^6 + (432 + 270*sqrt3)*x^4*y + (168 + 94*sqrt3)*x^2*y^2 \
                 - (32 + 20*sqrt3)*y^3 + 33*z^2 - 22*(5*sqrt3 + 12)*x^3*z - 44*(sqrt3 + 1)*x*y*z",
                "(-774*sqrt3 - 1278)*x^7 + (594 + 396*sqrt3)*x^4*z - (1260 + 672*sqrt3)*x^5*y \
                 - (534 + 342*sqrt3)*x^3*y^2 - (4*sqrt3 + 24)*x*y^3 + 22*(5*sqrt3 + 12)*x^2*y*z \
                 + 22*(sqrt3 + 1)*y^2*z - 44*(sqrt3 + 1)*x*z^2",
                "162*(13*sqrt3 + 23)*x^8 + 108*(31 + 18*sqrt3)*x^6*y + 6*(175*sqrt3 + 291)*x^4*y^2 \
                 + 24*(7 + 3*sqrt3)*x^2*y^3 + (156 + 92*sqrt3)*y^4 + 22*(5*sqrt3 + 12)*x^2*z^2 \
                 - 132*(15 + 8*sqrt3)*x^5*z - 132*(5 + 3*sqrt3)*x^3*y*z - (176*sqrt3 + 264)*x*y^2*z",
            ],
            &r,
        ),
    );
    s.push(CommutingField, "W_weight", sec, scalars(&["5"]));
    s.push(Auxiliary, "rho", sec, scalars(&[RHO1, RHO2]));
    s.push(Auxiliary, "curve1", sec, Payload::Poly(curves[0].clone()));
    s.push(Auxiliary, "curve2", sec, Payload::Poly(curves[1].clone()));
    let a = format!("(P2 - i*(2 + sqrt3)*P1)/(U2 - {RHO1}*U1)");
    let b = format!(
        "{RHO1}*(i*U1*P1 + (i + 1)*U2*P1 + U1*P2)*(i*U1 + {RHO2}*U2)*U1\
         /(2 - U1^2*(U1^2 + (1 - i)*U1*U2 + i*U2^2))"
    );
    s.push(Parametrization, "f", sec, rat(&format!("{a} - {b}"), &src)).variety = Some(curves.clone());
    s.push(Parametrization, "f", sec, rat(&format!("{a} + {b}"), &src)).as_printed = true;
    s.push(
        Parametrization,
        "Delta1",
        sec,
        field(&[&format!("{RHO1}*P1"), &format!("-2*{RHO1}*U1^3"), "P2", "-2*U2^3"], &src),
    )
    .variety = Some(curves.clone());
    s.push(
        Parametrization,
        "Delta2",
        sec,
        field(&[&format!("{RHO2}*P1"), &format!("-2*{RHO2}*U1^3"), "P2", "-2*U2^3"], &src),
    )
    .variety = Some(curves);
    s.push(Parametrization, "Delta2_scale", sec, scalars(&["13904 + 8008*sqrt3"]));
    symmetry(&mut s, sec, "zeta12", 12);
    s.push(Symmetry, "T", sec, map(&["i*U1", "P1", "i*U2", "P2"], &src, &TORUS_VARS));
    // Linear action on (ξ, ζ), row-major.
    s.push(
        Symmetry,
        "B",
        sec,
        scalars(&["(i - 1)/2", "(i - 1)/2", "(i + 1)/2", "-(i + 1)/2"]),
    );
    s
}

fn chazy_xi() -> ArtifactSet {
    let sec = "Chazy XI";
    let r = reg(&["x", "y", "z", "k"]);
    let t = reg(&["X", "Y", "Z", "k"]);
    let src = reg(&["phi", "p", "q", "k"]);
    let mut s = ArtifactSet::default();
    s.push(
        Auxiliary,
        "change",
        sec,
        map(
            &["(k + 1)*x/2", "y + (k^2 - 1)*x^2/4", "z + (k^2 - 1)*x*y/2"],
            &r,
            &["X", "Y", "Z"],
        ),
    );
    s.push(
        Auxiliary,
        "transformed",
        sec,
        field(&["((1 - k)*X^2 + (1 + k)*Y)/2", "Z", "6*Y^2"], &t),
    );
    s.push(FirstIntegral, "g3", sec, poly("4*Y^3 - Z^2", &t));
    s.push(Auxiliary, "curve", sec, poly("q^2 - 4*p^3 + 1", &src));
    s.push(
        Parametrization,
        "Delta",
        sec,
        field(&["((1 - k)*phi^2 + (1 + k)*p)/2", "q"], &src),
    )
    .variety = Some(vec![parse_poly("q^2 - 4*p^3 + 1", &src).expect("curve")]);
    s.push(Parametrization, "Phi", sec, map(&["phi", "p", "q"], &src, &["X", "Y", "Z"]));
    s
}

/// The polynomial P with φ = (k/2 − 3)P'/P a rational solution of XII.
pub fn xii_polynomial(k: i64) -> Option<&'static str> {
    match k {
        2 => Some("t^2 + 1"),
        3 => Some("3*t^3 + 3*t^2 + t + 1"),
        4 => Some("t^5 + t"),
        5 => Some("t^11 + 11*t^6 - t"),
        _ => None,
    }
}

fn chazy_xii(k: XiiParam) -> ArtifactSet {
    let sec = "Chazy XII";
    let r = reg(&["x", "y", "z", "c"]);
    let tr = reg(&["t"]);
    let mut s = ArtifactSet::default();
    s.push(Auxiliary, "A", sec, field(&["6", "2*x", "6*y"], &r));
    if let XiiParam::Finite(k) = k {
        if let Some(p) = xii_polynomial(k) {
            s.push(ClosedFormSolution, "P", sec, poly(p, &tr));
            if k == 3 {
                s.push(ClosedFormSolution, "P", sec, poly("3*t^3 + 3*t + 1", &tr)).as_printed = true;
            }
        }
    }
    s.push(
        ClosedFormSolution,
        "sl2_orbit",
        sec,
        Payload::Text("phi~(t) = (c*t + d)^-2 * phi((a*t + b)/(c*t + d)) - 6*c/(c*t + d), a*d - b*c = 1".into()),
    );
    s
}

//! Checks that reduce to identities between polynomials or rational functions.

use super::tower::{SquareRule, Tower};
use super::{CheckResult, VerifyError};
use crate::algebra::{CycloNumber, Monomial, MultiPoly, RatFun, Registry, WeightedDegree};
use crate::analytic::{chazy12_from_polynomial, chazy12_solutions};
use crate::catalog::{artifacts, build_equation, ArtifactSet, EquationId, ParametricEquation, Payload, XiiParam};
use crate::fields::{pushforward_check, solve_linear, PolyVectorField};

fn weights_for(r: &Registry) -> Vec<i64> {
    let mut w = vec![0; r.len()];
    for (j, v) in [1, 2, 3].into_iter().enumerate().take(r.len()) {
        w[j] = v;
    }
    w
}

fn need<'a, T: ?Sized>(v: Option<&'a T>, name: &str) -> Result<&'a T, VerifyError> {
    v.ok_or_else(|| VerifyError::MissingArtifact(name.to_string()))
}

fn one() -> CycloNumber {
    CycloNumber::one()
}

/// Numerator of a − b over a common denominator.
fn rat_residual(a: &RatFun, b: &RatFun) -> MultiPoly {
    &(a.num() * b.den()) - &(b.num() * a.den())
}

fn reduce(p: MultiPoly, rules: &[SquareRule]) -> MultiPoly {
    rules.iter().fold(p, |acc, r| acc.reduce_square(r.var, &r.rhs))
}

/// The value of `r` if it is constant.
pub(crate) fn constant_value(r: &RatFun) -> Option<CycloNumber> {
    let n = r.vars().len();
    for shift in 0..16i64 {
        let point: Vec<CycloNumber> = (0..n as i64).map(|j| CycloNumber::from_int(2 + shift + 3 * j * (shift + 1))).collect();
        let d = r.den().eval_exact(&point);
        if d.is_zero() {
            continue;
        }
        let c = r.num().eval_exact(&point).div(&d)?;
        return (r.num() - &r.den().scale(&c)).is_zero().then_some(c);
    }
    None
}

/// Φ_n = N_n / D^{n+1} for n < count.
pub(crate) fn tower_maps(t: &Tower, count: usize) -> Result<Vec<RatFun>, VerifyError> {
    let mut out = Vec::with_capacity(count);
    let mut pow = t.den.clone();
    for n in 0..count {
        out.push(RatFun::new(t.num[n].clone(), pow.clone())?);
        pow = &pow * &t.den;
    }
    Ok(out)
}

/// Square-reduction rules P_i² → 1 − U_i⁴ from the curve artifacts.
pub(crate) fn torus_rules(set: &ArtifactSet) -> Result<Vec<SquareRule>, VerifyError> {
    let mut rules = Vec::new();
    for (name, var) in [("curve1", 1), ("curve2", 3)] {
        let c = need(set.poly(name), name)?;
        // curve = P² − 1 + U⁴
        let rhs = &MultiPoly::var(c.vars(), var).pow(2) - c;
        rules.push(SquareRule { var, rhs });
    }
    Ok(rules)
}


pub fn check_first_integral(id: EquationId, name: &str, field: &PolyVectorField, q: &MultiPoly) -> Result<CheckResult, VerifyError> {
    let r = field.lie_derivative(q)?;
    Ok(CheckResult::exact(id, format!("first_integral:{name}"), &r))
}

pub fn check_weighted_degree(id: EquationId, name: &str, q: &MultiPoly) -> CheckResult {
    let w = weights_for(q.vars());
    let cid = format!("weighted_degree:{name}");
    match q.weighted_degree(&w) {
        WeightedDegree::Homogeneous(d) => CheckResult::exact_bool(id, cid, true, "0".into()).with_note(format!("weighted degree {d}")),
        WeightedDegree::Zero => CheckResult::exact_bool(id, cid, false, "zero polynomial".into()),
        WeightedDegree::NonHomogeneous { first, second } => CheckResult::exact_bool(
            id,
            cid,
            false,
            format!("monomials {:?} and {:?} have different weights", first.0, second.0),
        ),
    }
}

/// V·Q = 0 and weighted homogeneity for each first integral in x, y, z.
pub fn verify_first_integrals(id: EquationId) -> Result<Vec<CheckResult>, VerifyError> {
    let eq = build_equation(id)?;
    let set = artifacts(id);
    let mut out = Vec::new();
    for a in set.first_integrals() {
        if let Payload::Poly(q) = &a.payload {
            if q.vars() != eq.vars() {
                continue;
            }
            out.push(check_first_integral(id, &a.name, eq.field(), q)?);
            out.push(check_weighted_degree(id, &a.name, q));
        }
    }
    Ok(out)
}

/// (V·P)² − (4P³ − g₂P − g₃).
pub fn check_weierstrass(
    id: EquationId,
    field: &PolyVectorField,
    p: &MultiPoly,
    g2: &MultiPoly,
    g3: &MultiPoly,
) -> Result<CheckResult, VerifyError> {
    let vp = field.lie_derivative(p)?;
    let rhs = &(&p.pow(3).scale_int(4) - &(g2 * p)) - g3;
    Ok(CheckResult::exact(id, "weierstrass", &(&vp.pow(2) - &rhs)))
}

/// y² − (x⁴ + 2ax + b).
pub fn check_quartic(id: EquationId, a: &MultiPoly, b: &MultiPoly) -> Result<CheckResult, VerifyError> {
    let r = a.vars();
    let (x, y) = (MultiPoly::var(r, 0), MultiPoly::var(r, 1));
    let rhs = &(&x.pow(4) + &(&x * a).scale_int(2)) + b;
    Ok(CheckResult::exact(id, "quartic", &(&y.pow(2) - &rhs)))
}

pub fn verify_complete_integrability(id: EquationId) -> Result<Vec<CheckResult>, VerifyError> {
    let set = artifacts(id);
    Ok(match id {
        EquationId::VII => {
            let eq = build_equation(id)?;
            vec![check_weierstrass(
                id,
                eq.field(),
                need(set.poly("P"), "P")?,
                need(set.poly("g2"), "g2")?,
                need(set.poly("g3"), "g3")?,
            )?]
        }
        EquationId::VIII => vec![check_quartic(id, need(set.poly("a"), "a")?, need(set.poly("b"), "b")?)?],
        _ => Vec::new(),
    })
}


fn max_weight(p: &MultiPoly, w: &[i64]) -> i64 {
    p.terms().map(|(m, _)| m.weight(w)).max().unwrap_or(0)
}

fn monomials_up_to(w: &[i64], d: i64) -> Vec<Monomial> {
    fn go(w: &[i64], d: i64, j: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if j == w.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        if w[j] <= 0 {
            cur.push(0);
            go(w, d, j + 1, cur, out);
            cur.pop();
            return;
        }
        let mut e = 0;
        while e as i64 * w[j] <= d {
            cur.push(e);
            go(w, d - e as i64 * w[j], j + 1, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(w, d, 0, &mut Vec::new(), &mut out);
    out
}

/// g with V·H = g·H, by an ansatz over all monomials of weighted degree up
/// to deg(V·H) − deg(H) and an exact linear solve.
pub fn find_cofactor(field: &PolyVectorField, h: &MultiPoly) -> Result<Option<MultiPoly>, VerifyError> {
    let r = h.vars();
    let vh = field.lie_derivative(h)?;
    if vh.is_zero() {
        return Ok(Some(MultiPoly::zero(r)));
    }
    let w = weights_for(r);
    let min_h = h.terms().map(|(m, _)| m.weight(&w)).min().unwrap_or(0);
    let d = max_weight(&vh, &w) - min_h;
    if d < 0 {
        return Ok(None);
    }
    let basis = monomials_up_to(&w, d);
    let cols: Vec<MultiPoly> = basis
        .iter()
        .map(|m| &MultiPoly::monomial(r, &m.0, one()) * h)
        .collect();
    let mut rows: Vec<Monomial> = cols.iter().flat_map(|c| c.terms().map(|(m, _)| m.clone())).collect();
    rows.extend(vh.terms().map(|(m, _)| m.clone()));
    rows.sort();
    rows.dedup();
    let a: Vec<Vec<CycloNumber>> = rows.iter().map(|m| cols.iter().map(|c| c.coeff(m)).collect()).collect();
    let b: Vec<CycloNumber> = rows.iter().map(|m| vh.coeff(m)).collect();
    let Some(sol) = solve_linear(&a, &b) else {
        return Ok(None);
    };
    let g = MultiPoly::from_terms(r, basis.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()));
    Ok((&vh - &(&g * h)).is_zero().then_some(g))
}

pub fn check_invariant_surface(id: EquationId, name: &str, field: &PolyVectorField, h: &MultiPoly) -> Result<CheckResult, VerifyError> {
    let cid = format!("invariant_surface:{name}");
    Ok(match find_cofactor(field, h)? {
        Some(g) => CheckResult::exact_bool(id, cid, true, "0".into()).with_note(format!("cofactor {}", g.to_canonical_string())),
        None => {
            let vh = field.lie_derivative(h)?;
            CheckResult::exact_bool(id, cid, false, vh.to_canonical_string()).with_note("no polynomial cofactor of the expected degree")
        }
    })
}

/// Restriction of a polynomial in x, y, z to the graph z = chart(x, y).
fn on_chart(p: &MultiPoly, chart: &RatFun) -> Result<RatFun, VerifyError> {
    let r2 = chart.vars();
    let map = [RatFun::var(r2, 0), RatFun::var(r2, 1), chart.clone()];
    Ok(p.substitute(&map)?)
}

pub fn verify_invariant_surface(id: EquationId) -> Result<Vec<CheckResult>, VerifyError> {
    if !matches!(id, EquationId::IV | EquationId::V | EquationId::VI) {
        return Ok(Vec::new());
    }
    let eq = build_equation(id)?;
    let set = artifacts(id);
    let h = need(set.poly("H"), "H")?;
    let mut out = vec![check_invariant_surface(id, "H", eq.field(), h)?];
    match id {
        EquationId::IV => {
            let q = need(set.poly("Q"), "Q")?;
            let prod = ["l1", "l2", "l3"]
                .iter()
                .map(|n| need(set.poly(n), n).cloned())
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .reduce(|a, b| &a * &b)
                .expect("three factors");
            let qm1 = q - &MultiPoly::one(q.vars());
            out.push(match (&prod - h).exact_divide(&qm1)? {
                Ok(quot) => CheckResult::exact_bool(id, "divides:Q-1", true, "0".into())
                    .with_note(format!("quotient {}", quot.to_canonical_string())),
                Err(rem) => CheckResult::exact(id, "divides:Q-1", &rem),
            });
        }
        EquationId::V => {
            let chart = need(set.ratfun("chart"), "chart")?;
            let restricted = on_chart(h, chart)?;
            let x = RatFun::var(chart.vars(), 0);
            let lhs = restricted.try_mul(&x.try_mul(&x)?.scale(&CycloNumber::from_int(4)))?;
            let mut prod = RatFun::constant(chart.vars(), one());
            for n in ["C1", "C2", "C3", "C4"] {
                prod = prod.try_mul(&on_chart(need(set.poly(n), n)?, chart)?)?;
            }
            out.push(CheckResult::exact(id, "chart_factorization", &rat_residual(&lhs, &prod)).with_note("4x²·H on the chart equals C1C2C3C4"));
        }
        _ => {}
    }
    Ok(out)
}


/// Δ³f − RHS(f, Δf, Δ²f) for a catalog equation, exact.
pub fn check_delta_ode(
    id: EquationId,
    check_id: &str,
    f: &RatFun,
    delta: &PolyVectorField,
    rules: &[SquareRule],
) -> Result<(CheckResult, Tower), VerifyError> {
    let eq = build_equation(id)?;
    let t = Tower::new(f, delta, 3, rules)?;
    let res = t.chazy_residual(&eq.coeffs)?;
    Ok((CheckResult::exact(id, check_id, &res), t))
}

/// Constant value of Q∘(Φ0, Φ1, Φ2), if constant.
fn level_of(q: &MultiPoly, phi: &[RatFun]) -> Result<Option<CycloNumber>, VerifyError> {
    Ok(constant_value(&q.substitute(phi)?))
}

fn parametrization_2d(id: EquationId, set: &ArtifactSet) -> Result<Vec<CheckResult>, VerifyError> {
    let eq = build_equation(id)?;
    let f = need(set.ratfun("f"), "f")?;
    let delta = need(set.field("Delta"), "Delta")?;
    let q = need(set.poly("Q"), "Q")?;
    let (ode, tower) = check_delta_ode(id, "delta_ode", f, delta, &[])?;
    let mut out = vec![ode];
    let phi = tower_maps(&tower, 3)?;

    let push = pushforward_check(&phi, delta, eq.field(), &one())?;
    out.push(match push.failure {
        None => CheckResult::exact_bool(id, "pushforward", true, "0".into()),
        Some((j, r)) => CheckResult::exact(id, "pushforward", &r).with_note(format!("component {j}")),
    });

    // Expected level: the stated one, or Q restricted to the chart.
    let chart = set.ratfun("chart");
    let mut expected = set.scalar("level").cloned();
    if let Some(ch) = chart {
        let on = constant_value(&on_chart(q, ch)?);
        match (&expected, on) {
            (Some(e), Some(c)) if *e != c => {
                out.push(CheckResult::exact_bool(id, "chart_level", false, format!("Q on chart = {c}, stated {e}")));
            }
            (_, Some(c)) => {
                out.push(CheckResult::exact_bool(id, "chart_level", true, "0".into()).with_note(format!("Q = {c} on the chart")));
                expected = Some(c);
            }
            (_, None) => out.push(CheckResult::exact_bool(id, "chart_level", false, "Q is not constant on the chart".into())),
        }
    }
    let level = level_of(q, &phi)?;
    out.push(match (level, &expected) {
        (Some(c), Some(e)) => CheckResult::exact_bool(id, "level", c == *e, if c == *e { "0".into() } else { format!("Q∘Φ = {c}, expected {e}") })
            .with_note(format!("Q∘Φ = {c}")),
        (Some(c), None) => CheckResult::exact_bool(id, "level", true, "0".into()).with_note(format!("Q∘Φ = {c} (recorded)")),
        (None, _) => CheckResult::exact_bool(id, "level", false, "Q∘Φ is not constant".into()),
    });

    if let Some(inv) = set.map("inverse") {
        let src = f.vars();
        let mut worst: Option<MultiPoly> = None;
        for (i, comp) in inv.iter().enumerate() {
            let back = comp.substitute(&phi)?;
            let r = rat_residual(&back, &RatFun::var(src, i));
            if !r.is_zero() && worst.is_none() {
                worst = Some(r);
            }
        }
        out.push(CheckResult::exact(id, "inverse", &worst.unwrap_or_else(|| MultiPoly::zero(src))));
    }

    for a in set.items.iter().filter(|a| a.as_printed) {
        let cid = format!("printed_reading_rejected:{}", a.name);
        match (&a.payload, a.name.as_str()) {
            (Payload::RatFun(pf), "f") => {
                let t = Tower::new(pf, delta, 3, &[])?;
                let res = t.chazy_residual(&eq.coeffs)?;
                let lvl = level_of(q, &tower_maps(&t, 3)?)?;
                let valid = res.is_zero() && lvl.is_some() && lvl == expected;
                out.push(CheckResult::exact_bool(id, cid, !valid, if valid { "printed reading passes".into() } else { "0".into() }).with_note(
                    if res.is_zero() { "ODE holds but the level differs" } else { "ODE residual nonzero" },
                ));
            }
            (Payload::RatFun(pc), "chart") => {
                let lvl = constant_value(&on_chart(q, pc)?);
                let valid = lvl.is_some() && lvl == expected;
                out.push(
                    CheckResult::exact_bool(id, cid, !valid, if valid { "printed reading passes".into() } else { "0".into() })
                        .with_note(match lvl {
                            Some(c) => format!("Q = {c} on the printed chart"),
                            None => "Q not constant on the printed chart".into(),
                        }),
                );
            }
            _ => {}
        }
    }
    Ok(out)
}

fn parametrization_xi(id: EquationId, set: &ArtifactSet) -> Result<Vec<CheckResult>, VerifyError> {
    let transformed = need(set.field("transformed"), "transformed")?;
    let delta = need(set.field("Delta"), "Delta")?;
    let phi_map = need(set.map("Phi"), "Phi")?;
    let curve = need(set.poly("curve"), "curve")?;
    let src = delta.vars().clone();
    let p = MultiPoly::var(&src, 1);
    let mut out = Vec::new();
    // q' from differentiating the curve along Δ: 2q·q' = 12p²·p' with p' = q.
    let dcurve_p = curve.partial(1).neg();
    let two_q = curve.partial(2);
    let qdot = match (&dcurve_p * delta.component(1)).exact_divide(&two_q)? {
        Ok(v) => v,
        Err(rem) => {
            out.push(CheckResult::exact(id, "phi_conjugacy", &rem).with_note("q' is not polynomial"));
            return Ok(out);
        }
    };
    let expected = p.pow(2).scale_int(6);
    let full = PolyVectorField::new(&src, vec![delta.component(0).clone(), delta.component(1).clone(), qdot.clone()])?;
    out.push(CheckResult::exact(id, "second_derivative", &(&qdot - &expected)).with_note("q' = 6p²"));
    out.push(CheckResult::exact(id, "curve_preserved", &full.lie_derivative(curve)?));
    let push = pushforward_check(phi_map, &full, transformed, &one())?;
    out.push(match push.failure {
        None => CheckResult::exact_bool(id, "phi_conjugacy", true, "0".into()),
        Some((j, r)) => CheckResult::exact(id, "phi_conjugacy", &r).with_note(format!("component {j}")),
    });
    Ok(out)
}

pub fn verify_parametrization_exact(id: EquationId) -> Result<Vec<CheckResult>, VerifyError> {
    let set = artifacts(id);
    match id {
        EquationId::IV | EquationId::V | EquationId::VI => parametrization_2d(id, &set),
        EquationId::XI(_) => parametrization_xi(id, &set),
        EquationId::Xplus | EquationId::Xminus => {
            let rules = torus_rules(&set)?;
            let f = need(set.ratfun("f"), "f")?;
            let d1 = need(set.field("Delta1"), "Delta1")?;
            let (ode, _) = check_delta_ode(id, "delta_ode_reduced", f, d1, &rules)?;
            let mut out = vec![ode.with_note("modulo P_i² = 1 − U_i⁴")];
            for a in set.items.iter().filter(|a| a.as_printed && a.name == "f") {
                if let Payload::RatFun(pf) = &a.payload {
                    let (c, _) = check_delta_ode(id, "printed", pf, d1, &rules)?;
                    out.push(CheckResult::exact_bool(
                        id,
                        "printed_reading_rejected:f",
                        !c.passed,
                        if c.passed { "printed reading passes".into() } else { "0".into() },
                    ));
                }
            }
            Ok(out)
        }
        _ => Ok(Vec::new()),
    }
}


fn bracket_check(id: EquationId, cid: &str, lhs: &PolyVectorField, rhs: &PolyVectorField) -> Result<CheckResult, VerifyError> {
    let diff = lhs.sub(rhs)?;
    let first = diff.components().iter().find(|c| !c.is_zero()).cloned();
    Ok(CheckResult::exact(id, cid, &first.unwrap_or_else(|| MultiPoly::zero(lhs.vars()))))
}

fn push_result(id: EquationId, cid: &str, res: crate::fields::PushforwardResult) -> CheckResult {
    match res.failure {
        None => CheckResult::exact_bool(id, cid, true, "0".into()),
        Some((j, r)) => CheckResult::exact(id, cid, &r).with_note(format!("component {j}")),
    }
}

/// Weight relation [L, V] = V, commuting fields, divergences, changes of
/// variables and the XII algebra.
pub fn verify_structure(id: EquationId) -> Result<Vec<CheckResult>, VerifyError> {
    let eq = build_equation(id)?;
    let set = artifacts(id);
    let v = eq.field();
    let l = PolyVectorField::weight_field(v.vars());
    let mut out = vec![bracket_check(id, "lv_bracket", &l.bracket(v)?, v)?];
    if let Some(w) = set.field("W") {
        let m = need(set.scalar("W_weight"), "W_weight")?;
        out.push(bracket_check(id, "commutes:W", &v.bracket(w)?, &PolyVectorField::zero(v.vars(), 3))?);
        out.push(bracket_check(id, "weight:W", &l.bracket(w)?, &w.scale(m))?);
        if let Some(q) = set.poly("Q") {
            out.push(CheckResult::exact(id, "w_first_integral:Q", &w.lie_derivative(q)?));
        }
        out.push(CheckResult::exact(id, "divergence:V", &v.divergence()));
        out.push(CheckResult::exact(id, "divergence:W", &w.divergence()));
    }
    match id {
        EquationId::II => {
            let change = need(set.map("change"), "change")?;
            let t = need(set.field("transformed"), "transformed")?;
            out.push(push_result(id, "change_of_variables", pushforward_check(change, v, t, &one())?));
        }
        EquationId::XI(_) => {
            let pv = ParametricEquation::xi();
            let change = need(set.map("change"), "change")?;
            let t = need(set.field("transformed"), "transformed")?;
            let g3 = need(set.poly("g3"), "g3")?;
            out.push(push_result(id, "change_of_variables", pushforward_check(change, pv.field(), t, &one())?));
            out.push(CheckResult::exact(id, "first_integral:g3", &t.lie_derivative(g3)?));
            let k = RatFun::var(pv.vars(), 3);
            let mut subst: Vec<RatFun> = change.to_vec();
            subst.push(k);
            let pulled = g3.substitute(&subst)?;
            out.push(CheckResult::exact_rat(id, "pullback_first_integral:g3", &pv.field().lie_derivative_rat(&pulled)?));
        }
        EquationId::XII(param) => {
            let pv = ParametricEquation::xii();
            let a = need(set.field("A"), "A")?;
            let pl = PolyVectorField::weight_field(pv.vars());
            let vv = pv.field();
            out.push(bracket_check(id, "a_bracket:AV", &a.bracket(vv)?, &pl.scale(&CycloNumber::from_int(2)))?);
            out.push(bracket_check(id, "a_bracket:LA", &pl.bracket(a)?, &a.scale(&CycloNumber::from_int(-1)))?);
            out.push(bracket_check(id, "a_bracket:LV", &pl.bracket(vv)?, vv)?);
            if let XiiParam::Finite(k) = param {
                if set.poly("P").is_some() {
                    let sol = chazy12_solutions(k)?;
                    out.push(CheckResult::exact_rat(id, "rational_solution", &sol.residual));
                }
                for art in set.items.iter().filter(|a| a.as_printed) {
                    if let Payload::Poly(p) = &art.payload {
                        let sol = chazy12_from_polynomial(k, p)?;
                        out.push(
                            CheckResult::exact_bool(
                                id,
                                format!("printed_reading_rejected:{}", art.name),
                                !sol.is_exact(),
                                if sol.is_exact() { "printed reading passes".into() } else { "0".into() },
                            )
                            .with_note(format!("residual numerator {}", sol.residual.num().num_terms())),
                        );
                    }
                }
            }
        }
        _ => {}
    }
    Ok(out)
}


/// c with g∘T = c·g, for a polynomial g.
fn polynomial_ratio(g: &MultiPoly, gt: &MultiPoly, rules: &[SquareRule]) -> Option<CycloNumber> {
    let gt = reduce(gt.clone(), rules);
    let g = reduce(g.clone(), rules);
    let (m, lc) = g.leading()?;
    let c = gt.coeff(m).div(lc)?;
    (&gt - &g.scale(&c)).is_zero().then_some(c)
}

/// Exponent j with f∘T = λʲ·f (modulo the reduction rules), if any.
fn rational_ratio(f: &RatFun, ft: &RatFun, lambda: &CycloNumber, order: i64, rules: &[SquareRule]) -> Option<i64> {
    let a = reduce(ft.num() * f.den(), rules);
    let b = reduce(f.num() * ft.den(), rules);
    (0..order).find(|&j| (&a - &b.scale(&lambda.pow(j))).is_zero())
}

pub fn verify_equivariance(id: EquationId) -> Result<Vec<CheckResult>, VerifyError> {
    let eq = build_equation(id)?;
    let set = artifacts(id);
    let Some(s) = set.map("S") else {
        return Ok(Vec::new());
    };
    let lambda = need(set.scalar("lambda"), "lambda")?.clone();
    let order = need(set.scalar("order"), "order")?.to_i64().ok_or_else(|| VerifyError::MissingArtifact("order".into()))?;
    let linv = lambda.inv().ok_or_else(|| VerifyError::MissingArtifact("lambda".into()))?;
    let mut out = Vec::new();

    let primitive = lambda.pow(order).is_one() && (1..order).all(|d| order % d != 0 || !lambda.pow(d).is_one());
    out.push(CheckResult::exact_bool(id, "symmetry_order:S", primitive, if primitive { "0".into() } else { format!("λ is not a primitive root of order {order}") }));
    out.push(push_result(id, "symmetry:S", pushforward_check(s, eq.field(), eq.field(), &linv)?));
    if let Some(q) = set.poly("Q") {
        let qs = q.substitute(s)?.to_poly()?;
        out.push(match polynomial_ratio(q, &qs, &[]) {
            Some(c) => CheckResult::exact_bool(id, "symmetry_first_integral:Q", true, "0".into()).with_note(format!("Q∘S = ({c})·Q")),
            None => CheckResult::exact_bool(id, "symmetry_first_integral:Q", false, "Q∘S is not a multiple of Q".into()),
        });
    }
    if let Some(w) = set.field("W") {
        let m = need(set.scalar("W_weight"), "W_weight")?.to_i64().unwrap_or(0);
        out.push(push_result(id, "symmetry:W", pushforward_check(s, w, w, &lambda.pow(-m))?));
    }
    if id == EquationId::IV {
        let r = eq.vars();
        let g = MultiPoly::gens(r);
        let sub = [g[0].scale(&lambda), g[1].scale(&lambda.pow(2)), g[2].clone()];
        let names = ["l1", "l2", "l3"];
        let mut first: Option<MultiPoly> = None;
        for k in 0..3 {
            let lk = need(set.poly(names[k]), names[k])?;
            let next = need(set.poly(names[(k + 1) % 3]), names[(k + 1) % 3])?;
            let r = &lk.compose(&sub)? - &next.scale(&lambda.pow(2));
            if !r.is_zero() && first.is_none() {
                first = Some(r);
            }
        }
        out.push(CheckResult::exact(id, "l_cycle", &first.unwrap_or_else(|| MultiPoly::zero(r))));
    }

    if let Some(t) = set.map("T") {
        let (f, delta) = match (set.ratfun("f"), set.field("Delta").or_else(|| set.field("Delta1"))) {
            (Some(f), Some(d)) => (f, d),
            _ => return Ok(out),
        };
        let rules = if matches!(id, EquationId::Xplus | EquationId::Xminus) { torus_rules(&set)? } else { Vec::new() };
        let ft = f.substitute(t)?;
        match rational_ratio(f, &ft, &lambda, order, &rules) {
            Some(j) => {
                let c = lambda.pow(j);
                let cinv = c.inv().expect("root of unity");
                let push = pushforward_check(t, delta, delta, &cinv)?;
                let mut res = push_result(id, "partner:T", push);
                res.note = Some(format!("f∘T = λ^{j}·f, DT·Δ = λ^-{j}·Δ∘T"));
                out.push(res);
            }
            None => out.push(CheckResult::exact_bool(id, "partner:T", false, "f∘T is not λʲ·f".into())),
        }
        let variety: Vec<MultiPoly> = set
            .get("f")
            .and_then(|a| a.variety.clone())
            .unwrap_or_default();
        for (n, g) in variety.iter().enumerate() {
            let gt = g.substitute(t)?.to_poly()?;
            let cid = format!("partner_variety:{}", n + 1);
            out.push(match polynomial_ratio(g, &gt, &[]) {
                Some(c) => CheckResult::exact_bool(id, cid, true, "0".into()).with_note(format!("factor {c}")),
                None => CheckResult::exact(id, cid, &gt),
            });
        }
    }

    if let (Some(b), Some(rho)) = (set.scalars("B"), set.scalars("rho")) {
        let m = |i: usize, j: usize| &b[2 * i + j];
        let mul = |x: &[CycloNumber; 4], y: &[CycloNumber; 4]| -> [CycloNumber; 4] {
            std::array::from_fn(|k| {
                let (i, j) = (k / 2, k % 2);
                &(&x[2 * i] * &y[j]) + &(&x[2 * i + 1] * &y[2 + j])
            })
        };
        let bb: [CycloNumber; 4] = std::array::from_fn(|k| b[k].clone());
        let cube = mul(&mul(&bb, &bb), &bb);
        let ident = [one(), CycloNumber::zero(), CycloNumber::zero(), one()];
        out.push(CheckResult::exact_bool(id, "partner_order:B", cube == ident, if cube == ident { "0".into() } else { format!("B³ = {cube:?}") }));
        let mut ok = true;
        let mut eig = Vec::new();
        for r in rho {
            let c = &(m(1, 0) * r) + m(1, 1);
            let top = &(m(0, 0) * r) + m(0, 1);
            ok &= top == &c * r;
            eig.push(c.to_string());
        }
        out.push(CheckResult::exact_bool(id, "partner_eigen:B", ok, if ok { "0".into() } else { "(ρ_j, 1) is not an eigenvector".into() }).with_note(format!("eigenvalues {}", eig.join(", "))));
    }
    Ok(out)
}

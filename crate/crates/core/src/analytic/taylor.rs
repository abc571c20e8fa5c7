//! Taylor-series integration of autonomous polynomial ODEs along polylines
//! in complex time.

use std::collections::HashMap;

use num_complex::Complex64;

use super::{AnalyticError, ComplexPath};
use crate::algebra::Scalar;
use crate::fields::PolyVectorField;

#[derive(Clone, Debug)]
enum Node {
    One,
    Var(usize),
    Mul(usize, usize),
}

/// A polynomial vector field compiled into a monomial-product graph, for
/// computing Taylor coefficients of solutions by Cauchy products.
#[derive(Clone, Debug)]
pub struct TaylorSystem<S: Scalar> {
    dim: usize,
    nodes: Vec<Node>,
    rhs: Vec<Vec<(S, usize)>>,
}

impl<S: Scalar> TaylorSystem<S> {
    pub fn new(field: &PolyVectorField, prec: usize) -> Result<Self, AnalyticError> {
        let dim = field.dim();
        if field.vars().len() != dim {
            return Err(AnalyticError::Dimension(format!(
                "field has {} components over {} variables; substitute parameters first",
                dim,
                field.vars().len()
            )));
        }
        let mut nodes = vec![Node::One];
        let mut memo: HashMap<Vec<u32>, usize> = HashMap::new();
        memo.insert(vec![0; dim], 0);
        for j in 0..dim {
            let mut e = vec![0; dim];
            e[j] = 1;
            memo.insert(e, nodes.len());
            nodes.push(Node::Var(j));
        }
        let mut rhs = Vec::with_capacity(dim);
        for comp in field.components() {
            let mut terms = Vec::new();
            for (m, c) in comp.terms() {
                let id = node_for(&m.0, &mut nodes, &mut memo);
                terms.push((S::from_cyclo(c, prec), id));
            }
            rhs.push(terms);
        }
        Ok(TaylorSystem { dim, nodes, rhs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Taylor coefficients x_j[0..=order] of the solution through `state`.
    pub fn coefficients(&self, state: &[S], order: usize) -> Vec<Vec<S>> {
        let zero = state[0].zero_like();
        let one = state[0].one_like();
        let mut x: Vec<Vec<S>> = state.iter().map(|s| vec![s.clone()]).collect();
        let mut ser: Vec<Vec<S>> = vec![Vec::with_capacity(order + 1); self.nodes.len()];
        for k in 0..order {
            for (id, node) in self.nodes.iter().enumerate() {
                let v = match node {
                    Node::One => {
                        if k == 0 {
                            one.clone()
                        } else {
                            zero.clone()
                        }
                    }
                    Node::Var(j) => x[*j][k].clone(),
                    Node::Mul(a, b) => {
                        let mut acc = zero.clone();
                        for i in 0..=k {
                            acc = acc.add(&ser[*a][i].mul(&ser[*b][k - i]));
                        }
                        acc
                    }
                };
                ser[id].push(v);
            }
            let kp1 = S::from_i64_p(k as i64 + 1, one.precision());
            for j in 0..self.dim {
                let mut f = zero.clone();
                for (c, id) in &self.rhs[j] {
                    f = f.add(&c.mul(&ser[*id][k]));
                }
                x[j].push(f.div(&kp1));
            }
        }
        x
    }
}

fn node_for(e: &[u32], nodes: &mut Vec<Node>, memo: &mut HashMap<Vec<u32>, usize>) -> usize {
    if let Some(&id) = memo.get(e) {
        return id;
    }
    let (j, _) = e
        .iter()
        .enumerate()
        .max_by_key(|(_, &v)| v)
        .expect("nonempty exponent");
    let mut rest = e.to_vec();
    rest[j] -= 1;
    let a = node_for(&rest, nodes, memo);
    let mut unit = vec![0; e.len()];
    unit[j] = 1;
    let b = memo[&unit];
    let id = nodes.len();
    nodes.push(Node::Mul(a, b));
    memo.insert(e.to_vec(), id);
    id
}

#[derive(Clone, Debug)]
pub struct TracePoint<S: Scalar> {
    pub t: S,
    pub state: Vec<S>,
}

#[derive(Clone, Debug)]
pub struct PathSolution<S: Scalar> {
    pub end: Vec<S>,
    pub trace: Vec<TracePoint<S>>,
    pub steps: usize,
}

/// Either the full path was traversed, or the step size collapsed.
#[derive(Clone, Debug)]
pub enum Outcome<S: Scalar> {
    Completed(PathSolution<S>),
    Singular {
        at: Complex64,
        radius: f64,
        partial: PathSolution<S>,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct IntegratorConfig {
    pub tol: f64,
    pub max_steps: usize,
    /// Steps below this length count as a collapse.
    pub min_step: f64,
    /// States above this magnitude count as a blow-up.
    pub blowup: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            tol: 1e-12,
            max_steps: 200_000,
            min_step: 1e-9,
            blowup: 1e40,
        }
    }
}

fn order_for(prec: usize) -> usize {
    (prec / 3).max(24)
}

fn horner<S: Scalar>(c: &[S], h: &S) -> S {
    let mut acc = c[c.len() - 1].clone();
    for k in (0..c.len() - 1).rev() {
        acc = acc.mul(h).add(&c[k]);
    }
    acc
}

/// Estimated radius of convergence from the tail of the coefficient lists,
/// relative to each component's scale.
fn radius_estimate<S: Scalar>(coeffs: &[Vec<S>]) -> f64 {
    let mut rho = f64::INFINITY;
    for c in coeffs {
        let n = c.len() - 1;
        let scale = c[0].abs_f64().max(1.0);
        for k in [n, n - 1, n - 2] {
            let a = c[k].abs_f64() / scale;
            if !a.is_finite() {
                return 0.0;
            }
            if a > 0.0 {
                rho = rho.min(a.powf(-1.0 / k as f64));
            }
        }
    }
    rho
}

/// Integrates along the path, stopping at the first step-size collapse.
pub fn integrate<S: Scalar>(
    sys: &TaylorSystem<S>,
    init: &[S],
    path: &ComplexPath<S>,
    cfg: &IntegratorConfig,
) -> Result<Outcome<S>, AnalyticError> {
    if init.len() != sys.dim() {
        return Err(AnalyticError::Dimension(format!(
            "initial state has {} entries, field has {}",
            init.len(),
            sys.dim()
        )));
    }
    let prec = init[0].precision();
    let order = order_for(prec);
    let tol = cfg.tol.max(2f64.powi(-(prec as i32)));
    let factor = 0.8 * tol.powf(1.0 / order as f64);
    let mut state = init.to_vec();
    let mut t = path.vertices()[0].clone();
    let mut trace = vec![TracePoint {
        t: t.clone(),
        state: state.clone(),
    }];
    let mut steps = 0usize;
    for seg in path.vertices().windows(2) {
        let target = &seg[1];
        loop {
            let delta = target.sub(&t);
            let remaining = delta.abs_f64();
            if remaining == 0.0 {
                break;
            }
            let coeffs = sys.coefficients(&state, order);
            let rho = radius_estimate(&coeffs);
            let mut h = factor * rho;
            let last = h >= remaining;
            if last {
                h = remaining;
            }
            let singular = !last && (h < cfg.min_step || steps >= cfg.max_steps)
                || state.iter().any(|s| !(s.abs_f64() < cfg.blowup));
            if singular {
                return Ok(Outcome::Singular {
                    at: t.to_c64(),
                    radius: rho,
                    partial: PathSolution {
                        end: state,
                        trace,
                        steps,
                    },
                });
            }
            let step = if last { delta } else { delta.scale_f64(h / remaining) };
            let next: Vec<S> = coeffs.iter().map(|c| horner(c, &step)).collect();
            if next.iter().any(|s| !(s.abs_f64() < cfg.blowup)) {
                return Ok(Outcome::Singular {
                    at: t.to_c64(),
                    radius: rho,
                    partial: PathSolution {
                        end: state,
                        trace,
                        steps,
                    },
                });
            }
            state = next;
            t = if last { target.clone() } else { t.add(&step) };
            steps += 1;
            trace.push(TracePoint {
                t: t.clone(),
                state: state.clone(),
            });
            if last {
                break;
            }
        }
    }
    Ok(Outcome::Completed(PathSolution {
        end: state,
        trace,
        steps,
    }))
}

/// Integrates `field` from `init` along `path`; a collapse of the step size is
/// reported as [`AnalyticError::Singularity`].
pub fn integrate_path<S: Scalar>(
    field: &PolyVectorField,
    init: &[S],
    path: &ComplexPath<S>,
    tol: f64,
) -> Result<PathSolution<S>, AnalyticError> {
    let prec = init.first().map_or(53, |s| s.precision());
    let sys = TaylorSystem::new(field, prec)?;
    let cfg = IntegratorConfig {
        tol,
        ..IntegratorConfig::default()
    };
    match integrate(&sys, init, path, &cfg)? {
        Outcome::Completed(sol) => Ok(sol),
        Outcome::Singular { at, radius, .. } => Err(AnalyticError::Singularity { at, radius }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MpComplex, Registry};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exponential_along_complex_path() {
        let r = Registry::new(&["x"]);
        let f = PolyVectorField::parse(&r, &["x"]).unwrap();
        let path = ComplexPath::new(vec![c(0.0, 0.0), c(1.0, 1.0), c(2.0, -0.5)], false).unwrap();
        let sol = integrate_path(&f, &[c(1.0, 0.0)], &path, 1e-14).unwrap();
        assert!((sol.end[0] - c(2.0, -0.5).exp()).norm() < 1e-12);
    }

    #[test]
    fn zero_path_returns_init() {
        let r = Registry::new(&["x", "y"]);
        let f = PolyVectorField::parse(&r, &["y", "-x"]).unwrap();
        let path = ComplexPath::new(vec![c(0.5, 0.0)], false).unwrap();
        let sol = integrate_path(&f, &[c(1.0, 2.0), c(3.0, 0.0)], &path, 1e-12).unwrap();
        assert_eq!(sol.end, vec![c(1.0, 2.0), c(3.0, 0.0)]);
        assert_eq!(sol.steps, 0);
    }

    #[test]
    fn blow_up_is_reported() {
        let r = Registry::new(&["x"]);
        let f = PolyVectorField::parse(&r, &["x^2"]).unwrap();
        let path = ComplexPath::new(vec![c(0.0, 0.0), c(2.0, 0.0)], false).unwrap();
        match integrate_path(&f, &[c(1.0, 0.0)], &path, 1e-12) {
            Err(AnalyticError::Singularity { at, .. }) => assert!((at - c(1.0, 0.0)).norm() < 1e-3),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn multiprecision_matches_closed_form() {
        let r = Registry::new(&["x"]);
        let f = PolyVectorField::parse(&r, &["x^2"]).unwrap();
        let p = 160;
        let path = ComplexPath::new(vec![MpComplex::zero(p), MpComplex::from_f64(0.0, 3.0, p)], false).unwrap();
        let sol = integrate_path(&f, &[MpComplex::from_f64(1.0, 0.0, p)], &path, 1e-40).unwrap();
        let want = MpComplex::from_f64(1.0, 0.0, p).div(&MpComplex::from_f64(1.0, -3.0, p));
        assert!(sol.end[0].sub(&want).abs_f64() < 1e-40);
    }
}

//! Formal power-series solutions of the Chazy XI fiber equation
//! 6s μ'(s) = kμ + ½(1−k)μ² + ½(1+k)ρ(s).

use num_traits::Zero;
use serde::Serialize;

use super::elliptic::rho_series;
use crate::algebra::{q, qi, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesSolution {
    pub k: i64,
    pub order: usize,
    /// a_1..a_order; when obstructed, only the coefficients below k/6.
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub obstruction: Option<Rational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Right-hand side of the coefficient equation at order n, given a_1..a_{n−1}.
fn rhs_at(k: i64, a: &[Rational], rho: &[Rational], n: usize) -> Rational {
    let mut conv = Rational::zero();
    for i in 1..n {
        conv += &a[i - 1] * &a[n - i - 1];
    }
    conv * q(1 - k, 2) + &rho[n] * q(1 + k, 2)
}

/// Solves (6n − k)a_n = ½(1−k)Σ a_i a_{n−i} + ½(1+k)b_n for n = 1..order.
/// At n = k/6 the left side vanishes and the right side is the obstruction.
pub fn xi_formal_solution(k: i64, order: usize) -> SeriesSolution {
    assert!(k > 0, "k must be positive");
    let rho = rho_series(order);
    let mut a: Vec<Rational> = Vec::with_capacity(order);
    for n in 1..=order {
        let r = rhs_at(k, &a, &rho, n);
        let lhs = 6 * n as i64 - k;
        if lhs == 0 {
            return SeriesSolution {
                k,
                order: n - 1,
                coeffs: a,
                obstruction: Some(r),
            };
        }
        a.push(r / qi(lhs));
    }
    SeriesSolution {
        k,
        order,
        coeffs: a,
        obstruction: None,
    }
}

/// Coefficients of 6sμ' − kμ − ½(1−k)μ² − ½(1+k)ρ for the truncated series,
/// orders 1..=order. Zero for a genuine solution.
pub fn mu_equation_residual(k: i64, coeffs: &[Rational]) -> Vec<Rational> {
    let order = coeffs.len();
    let rho = rho_series(order);
    (1..=order)
        .map(|n| {
            let an = &coeffs[n - 1];
            an * qi(6 * n as i64 - k) - rhs_at(k, coeffs, &rho, n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PowerSeries;

    fn check_by_series(k: i64, coeffs: &[Rational]) {
        let n = coeffs.len();
        let mut c = vec![Rational::zero()];
        c.extend(coeffs.iter().cloned());
        let mu = PowerSeries::new("s", c, n + 1);
        let rho = PowerSeries::new("s", rho_series(n), n + 1);
        let lhs = mu.derivative().shift(1).scale(&qi(6));
        let rhs = mu
            .scale(&qi(k))
            .add(&mu.mul(&mu).scale(&q(1 - k, 2)))
            .add(&rho.scale(&q(1 + k, 2)));
        let d = lhs.sub(&rhs);
        for j in 0..=n {
            assert!(d.coeff(j).is_zero(), "k={k} order {j}");
        }
    }

    #[test]
    fn k1_and_k5_series_solve_the_equation() {
        for k in [1, 5] {
            let s = xi_formal_solution(k, 30);
            assert!(s.obstruction.is_none());
            assert_eq!(s.coeffs.len(), 30);
            check_by_series(k, &s.coeffs);
            assert!(mu_equation_residual(k, &s.coeffs).iter().all(|r| r.is_zero()));
        }
    }

    #[test]
    fn obstruction_values() {
        assert_eq!(xi_formal_solution(6, 60).obstruction, Some(q(1, 8)));
        assert_eq!(xi_formal_solution(12, 60).obstruction, Some(q(-35, 4608)));
        assert_eq!(xi_formal_solution(18, 60).obstruction, Some(q(5005, 10616832)));
        assert_eq!(xi_formal_solution(12, 60).coeffs.len(), 1);
    }

    #[test]
    fn perturbation_breaks_recursion() {
        let s = xi_formal_solution(7, 20);
        let mut bad = s.coeffs.clone();
        bad[3] += qi(1);
        assert!(mu_equation_residual(7, &bad).iter().any(|r| !r.is_zero()));
        assert_eq!(xi_formal_solution(7, 20), s);
    }
}

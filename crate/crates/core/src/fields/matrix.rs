//! Small exact matrices over Q(ζ₆₀) and their spectra.

use std::fmt;

use crate::algebra::upoly::UPoly;
use crate::algebra::{sqrt_in_field, CycloNumber, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: Vec<Vec<CycloNumber>>,
}

impl FieldMatrix {
    pub fn new(rows: Vec<Vec<CycloNumber>>) -> Self {
        let n = rows.len();
        assert!(n > 0, "empty matrix");
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        FieldMatrix { rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycloNumber::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn from_rationals(rows: &[Vec<Rational>]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(CycloNumber::from_rational).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { CycloNumber::one() } else { CycloNumber::zero() })
                    .collect()
            })
            .collect();
        FieldMatrix { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<CycloNumber>] {
        &self.rows
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(CycloNumber::zero(), |acc, k| &acc + &(&self.rows[i][k] * &o.rows[k][j]))
                    })
                    .collect()
            })
            .collect();
        FieldMatrix { rows }
    }

    pub fn add(&self, o: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        FieldMatrix { rows }
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        FieldMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }

    /// M − λI.
    pub fn shift(&self, lambda: &CycloNumber) -> Self {
        let mut m = self.clone();
        for i in 0..self.n() {
            m.rows[i][i] = &m.rows[i][i] - lambda;
        }
        m
    }

    pub fn trace(&self) -> CycloNumber {
        (0..self.n()).fold(CycloNumber::zero(), |acc, i| &acc + &self.rows[i][i])
    }

    /// Coefficients of det(λI − M), constant term first, by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> Vec<CycloNumber> {
        let n = self.n();
        let mut c = vec![CycloNumber::zero(); n + 1];
        c[n] = CycloNumber::one();
        let mut mk = FieldMatrix {
            rows: vec![vec![CycloNumber::zero(); n]; n],
        };
        for k in 1..=n {
            mk = self.mul(&mk).add(&Self::identity(n).scale(&c[n - k + 1]));
            let tr = self.mul(&mk).trace();
            c[n - k] = -(&tr.scale_rational(&Rational::new(1.into(), (k as i64).into())));
        }
        c
    }

    /// Rank by Gaussian elimination over the field.
    pub fn rank(&self) -> usize {
        let mut m = self.rows.clone();
        let n = self.n();
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| !m[r][col].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => continue,
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv().expect("nonzero pivot");
            for r in 0..n {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] * &inv;
                    for c in col..n {
                        let t = &f * &m[rank][c];
                        m[r][c] = &m[r][c] - &t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n();
        let mut a = self.rows.clone();
        let mut b = Self::identity(n).rows;
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            b.swap(col, p);
            let inv = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &inv;
                b[col][c] = &b[col][c] * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..n {
                        let ta = &f * &a[col][c];
                        a[r][c] = &a[r][c] - &ta;
                        let tb = &f * &b[col][c];
                        b[r][c] = &b[r][c] - &tb;
                    }
                }
            }
        }
        Some(FieldMatrix { rows: b })
    }
}

/// One solution of the rectangular system `a · x = b` (free unknowns set to
/// zero), or `None` if it is inconsistent.
pub fn solve_linear(a: &[Vec<CycloNumber>], b: &[CycloNumber]) -> Option<Vec<CycloNumber>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<CycloNumber>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv()?;
        for c in col..=ncols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=ncols {
                    let t = &f * &m[row][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![CycloNumber::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenReport {
    /// det(λI − M), constant term first.
    pub charpoly: Vec<CycloNumber>,
    /// Eigenvalues found in Q(ζ₆₀), repeated by algebraic multiplicity.
    pub eigenvalues: Vec<CycloNumber>,
    /// Degree of the charpoly factor whose roots lie outside the field.
    pub unresolved_degree: usize,
    pub all_integer: bool,
    pub diagonalizable: bool,
}

impl EigenReport {
    pub fn has_eigenvalue(&self, n: i64) -> bool {
        self.eigenvalues.iter().any(|e| e.to_i64() == Some(n))
    }

    /// Integer eigenvalues in ascending order; `None` unless all are integers.
    pub fn integer_spectrum(&self) -> Option<Vec<i64>> {
        if !self.all_integer {
            return None;
        }
        let mut v: Vec<i64> = self.eigenvalues.iter().map(|e| e.to_i64().expect("integer")).collect();
        v.sort();
        Some(v)
    }
}

fn rational_component_gcd(p: &UPoly<CycloNumber>) -> UPoly<Rational> {
    let mut g: UPoly<Rational> = UPoly::zero();
    for j in 0..crate::algebra::cyclo::DEGREE {
        let comp = UPoly::new(p.coeffs().iter().map(|c| c.coeff(j)).collect());
        if !comp.is_zero() {
            g = if g.is_zero() { comp.monic() } else { g.gcd(&comp) };
        }
    }
    g
}

/// Roots of `p` in Q(ζ₆₀) with multiplicity, and the degree of what is left.
pub fn field_roots(p: &UPoly<CycloNumber>) -> (Vec<CycloNumber>, UPoly<CycloNumber>) {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    for r in rational_component_gcd(p).rational_roots() {
        let r = CycloNumber::from_rational(&r);
        let m = rest.root_multiplicity(&r);
        for _ in 0..m {
            roots.push(r.clone());
            rest = rest.divrem(&UPoly::linear(&r)).expect("monic").0;
        }
    }
    match rest.degree() {
        Some(1) => {
            let r = -(&(&rest.coeff(0) / &rest.coeff(1)));
            roots.push(r);
            rest = UPoly::constant(rest.coeff(1));
        }
        Some(2) => {
            let (a, b, c) = (rest.coeff(2), rest.coeff(1), rest.coeff(0));
            let disc = &(&b * &b) - &(&a * &c).scale_int(4);
            if let Some(s) = sqrt_in_field(&disc) {
                let two_a = a.scale_int(2);
                let r1 = &(&(-&b) + &s) / &two_a;
                let r2 = &(&(-&b) - &s) / &two_a;
                roots.push(r1);
                roots.push(r2);
                rest = UPoly::constant(a);
            }
        }
        _ => {}
    }
    (roots, rest)
}

/// Exact spectrum and diagonalizability of a small matrix.
pub fn eigen_analysis(m: &FieldMatrix) -> EigenReport {
    let cp = m.charpoly();
    let (mut roots, rest) = field_roots(&UPoly::new(cp.clone()));
    roots.sort_by(|a, b| match (a.to_rational(), b.to_rational()) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.to_string().cmp(&b.to_string()),
    });
    let unresolved_degree = rest.degree().unwrap_or(0);
    let all_integer = unresolved_degree == 0 && roots.iter().all(|r| r.to_integer().is_some());
    let mut diagonalizable = unresolved_degree == 0;
    let n = m.n();
    let mut distinct: Vec<(CycloNumber, usize)> = Vec::new();
    for r in &roots {
        match distinct.iter_mut().find(|(x, _)| x == r) {
            Some(e) => e.1 += 1,
            None => distinct.push((r.clone(), 1)),
        }
    }
    for (lambda, mult) in &distinct {
        if m.shift(lambda).rank() != n - mult {
            diagonalizable = false;
        }
    }
    EigenReport {
        charpoly: cp,
        eigenvalues: roots,
        unresolved_degree,
        all_integer,
        diagonalizable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;

    #[test]
    fn diagonal_spectrum() {
        let m = FieldMatrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let r = eigen_analysis(&m);
        assert_eq!(r.integer_spectrum(), Some(vec![1, 2, 3]));
        assert!(r.diagonalizable);
    }

    #[test]
    fn case_two_rejection_matrix() {
        let m = FieldMatrix::from_i64(&[&[1, -1, 0], &[0, 2, -1], &[-8, -5, 2]]);
        let r = eigen_analysis(&m);
        assert_eq!(r.integer_spectrum(), Some(vec![-1, 3, 3]));
        assert!(!r.diagonalizable);
    }

    #[test]
    fn jordan_block_and_quadratic_roots() {
        let m = FieldMatrix::from_i64(&[&[2, 1], &[0, 2]]);
        assert!(!eigen_analysis(&m).diagonalizable);
        let rot = FieldMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let r = eigen_analysis(&rot);
        assert!(r.diagonalizable && !r.all_integer);
        assert!(r.eigenvalues.contains(&c("i")));
        let m = FieldMatrix::from_i64(&[&[0, 2], &[1, 0]]);
        let r = eigen_analysis(&m);
        assert_eq!(r.unresolved_degree, 2);
        assert!(!r.all_integer);
    }

    #[test]
    fn charpoly_of_companion() {
        let m = FieldMatrix::from_i64(&[&[0, 0, 6], &[1, 0, -11], &[0, 1, 6]]);
        let cp = m.charpoly();
        let want: Vec<CycloNumber> = [-6, 11, -6, 1].iter().map(|&x| CycloNumber::from_int(x)).collect();
        assert_eq!(cp, want);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FieldMatrix::identity(3));
    }
}

//! Integer eigen-data satisfying the trace/determinant relations
//! Σ1/dᵢ = 1/6, Σtᵢ/dᵢ = 7/6, Σtᵢ²/dᵢ = 49/6.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ClassifierError;
use crate::algebra::{q, qi, Rational};

/// The two eigenvalues other than −1 at a collinearity point, u ≤ v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EigenPair {
    pub u: i64,
    pub v: i64,
}

impl EigenPair {
    pub fn new(u: i64, v: i64) -> Self {
        if u <= v {
            EigenPair { u, v }
        } else {
            EigenPair { u: v, v: u }
        }
    }

    pub fn t(&self) -> i64 {
        self.u + self.v
    }

    pub fn d(&self) -> i64 {
        self.u * self.v
    }

    /// The integer pair with u + v = t and uv = d, if there is one.
    pub fn from_trace_det(t: i64, d: i64) -> Option<Self> {
        let disc = (t as i128) * (t as i128) - 4 * (d as i128);
        if disc < 0 {
            return None;
        }
        let r = disc.isqrt();
        if r * r != disc || (t as i128 + r) % 2 != 0 {
            return None;
        }
        let u = ((t as i128 - r) / 2) as i64;
        Some(EigenPair::new(u, t - u))
    }

    /// All pairs with uv = d.
    pub fn factorizations(d: i64) -> Vec<EigenPair> {
        let mut out = Vec::new();
        if d == 0 {
            return out;
        }
        let n = d.abs();
        let mut a = 1;
        while a * a <= n {
            if n % a == 0 {
                let b = n / a;
                let (x, y) = if d > 0 { (a, b) } else { (a, -b) };
                out.push(EigenPair::new(x, y));
                out.push(EigenPair::new(-x, -y));
            }
            a += 1;
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for EigenPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

pub fn format_pairs(pairs: &[EigenPair]) -> String {
    let parts: Vec<String> = pairs.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Σ tᵢʲ/dᵢ for j = 0, 1, 2 against 1/6, 7/6, 49/6; the first `count`
/// relations are tested.
pub fn relations_hold(pairs: &[EigenPair], count: usize) -> bool {
    if pairs.iter().any(|p| p.d() == 0) {
        return false;
    }
    let targets = [q(1, 6), q(7, 6), q(49, 6)];
    (0..count).all(|j| {
        let s: Rational = pairs.iter().map(|p| qi(p.t().pow(j as u32)) / qi(p.d())).sum();
        s == targets[j]
    })
}

/// The traces are 7 − δ/κᵢ, so either every tᵢ is 7 (δ = 0) or none is.
pub fn realizable(pairs: &[EigenPair]) -> bool {
    let sevens = pairs.iter().filter(|p| p.t() == 7).count();
    sevens == 0 || sevens == pairs.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnitFractionSolutions {
    /// Sorted by (|d|, d), without cancelling pairs covered by a family.
    pub finite: Vec<Vec<i64>>,
    /// Prefixes P such that P ∪ (e, −e) is a solution for every e ≠ 0 not
    /// excluded.
    pub families: Vec<Vec<i64>>,
}

fn key(d: i64) -> (i64, i64) {
    (d.abs(), d)
}

fn recip(d: i64) -> Rational {
    q(1, d)
}

fn unit_rec(
    target: &Rational,
    slots: usize,
    last: Option<(i64, i64)>,
    excluded: &[i64],
    prefix: &mut Vec<i64>,
    out: &mut UnitFractionSolutions,
) {
    let allowed = |d: i64| d != 0 && !excluded.contains(&d) && last.is_none_or(|l| key(d) >= l);
    if target.is_zero() {
        if slots == 2 {
            out.families.push(prefix.clone());
        }
        return;
    }
    if slots == 1 {
        if target.numer().abs().is_one() {
            if let Some(d) = (target.denom() * target.numer()).to_i64() {
                if allowed(d) {
                    prefix.push(d);
                    out.finite.push(prefix.clone());
                    prefix.pop();
                }
            }
        }
        return;
    }
    // The entry of largest |1/d| still to come has |1/d| ≥ |target| / slots.
    let bound = (qi(slots as i64) / target.abs()).floor().to_integer().to_i64().unwrap_or(i64::MAX);
    let lo = last.map_or(1, |l| l.0.max(1));
    for a in lo..=bound {
        for d in [-a, a] {
            if !allowed(d) {
                continue;
            }
            prefix.push(d);
            unit_rec(&(target - recip(d)), slots - 1, Some(key(d)), excluded, prefix, out);
            prefix.pop();
        }
    }
}

/// All integer n-tuples (n ∈ {2, 3}) with Σ 1/dᵢ = target, up to order,
/// avoiding `excluded` values.
pub fn enumerate_unit_fractions(target: &Rational, n: usize, excluded: &[i64]) -> Result<UnitFractionSolutions, ClassifierError> {
    if !(n == 2 || n == 3) {
        return Err(ClassifierError::Unsupported(format!("unit-fraction enumeration needs n in {{2, 3}}, got {n}")));
    }
    if target.is_zero() && n == 3 {
        return Err(ClassifierError::Unsupported("three unit fractions summing to zero form an infinite set".into()));
    }
    let mut out = UnitFractionSolutions::default();
    unit_rec(target, n, None, excluded, &mut Vec::new(), &mut out);
    let families: Vec<Vec<i64>> = out
        .families
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.sort_by_key(|&d| key(d));
            p
        })
        .collect();
    let covered = |t: &[i64]| {
        t.iter().enumerate().any(|(i, &e)| {
            t.iter().enumerate().any(|(j, &f)| {
                j > i && f == -e && {
                    let mut rest: Vec<i64> = t.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &d)| d).collect();
                    rest.sort_by_key(|&d| key(d));
                    families.contains(&rest)
                }
            })
        })
    };
    let mut finite: BTreeSet<Vec<i64>> = BTreeSet::new();
    for t in out.finite.into_iter().filter(|t| !covered(t)) {
        let mut t = t;
        t.sort_by_key(|&d| key(d));
        finite.insert(t);
    }
    let mut finite: Vec<Vec<i64>> = finite.into_iter().collect();
    finite.sort_by(|a, b| a.iter().map(|&d| key(d)).cmp(b.iter().map(|&d| key(d))));
    let mut families = families;
    families.sort();
    families.dedup();
    Ok(UnitFractionSolutions { finite, families })
}

/// (fixed, c0 + c1·k) for a family parameter k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePair {
    pub fixed: i64,
    pub c0: i64,
    pub c1: i64,
}

impl AffinePair {
    pub fn moving(&self, k: i64) -> i64 {
        self.c0 + self.c1 * k
    }

    pub fn at(&self, k: i64) -> EigenPair {
        EigenPair::new(self.fixed, self.moving(k))
    }

    fn moving_string(&self) -> String {
        let lin = match self.c1 {
            0 => String::new(),
            1 => "k".into(),
            -1 => "-k".into(),
            c => format!("{c}k"),
        };
        match (self.c0, lin.is_empty()) {
            (c, true) => c.to_string(),
            (0, false) => lin,
            (c, false) if c > 0 => format!("{lin}+{c}"),
            (c, false) => format!("{lin}{c}"),
        }
    }
}

/// A one-parameter branch {lead, (f₂, m₂(k)), (f₃, m₃(k))}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenFamily {
    pub lead: EigenPair,
    pub pairs: [AffinePair; 2],
    /// k and −k give the same multiset of pairs.
    pub symmetric: bool,
}

impl EigenFamily {
    pub fn at(&self, k: i64) -> Vec<EigenPair> {
        let mut v = vec![self.lead, self.pairs[0].at(k), self.pairs[1].at(k)];
        v.sort();
        v
    }

    /// Integer parameter values (k > 0 when symmetric) where a pair has
    /// d = 0, where some but not all traces equal 7, or where eigenvalues at
    /// one point collide. Everything else is generic.
    pub fn exceptional(&self) -> Vec<i64> {
        let mut ks = BTreeSet::new();
        let mut solve = |c0: i64, c1: i64, value: i64| {
            if c1 != 0 && (value - c0) % c1 == 0 {
                ks.insert((value - c0) / c1);
            }
        };
        for p in &self.pairs {
            solve(p.c0, p.c1, 0);
            solve(p.c0, p.c1, p.fixed);
            solve(p.c0, p.c1, -1);
            if self.lead.t() != 7 {
                solve(p.c0 + p.fixed, p.c1, 7);
            }
        }
        let (a, b) = (self.pairs[0], self.pairs[1]);
        solve(a.c0 - b.c0, a.c1 - b.c1, 0);
        let mut out: Vec<i64> = ks
            .into_iter()
            .map(|k| if self.symmetric { k.abs() } else { k })
            .filter(|&k| k != 0 || !self.symmetric)
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for EigenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = std::iter::once(self.lead.to_string())
            .chain(self.pairs.iter().map(|p| format!("({},{})", p.fixed, p.moving_string())))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A uv = 6 branch with no integer solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedBranch {
    pub lead: EigenPair,
    /// Parameter values examined by the finite check.
    pub checked: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSolutions {
    /// Case 1 with no uᵢvᵢ = 6.
    pub case1: Vec<Vec<EigenPair>>,
    /// Case 1 with u₁v₁ = 6, solved identically in the parameter.
    pub families: Vec<EigenFamily>,
    /// Isolated Case 1 solutions found inside uv = 6 branches.
    pub case1_sporadic: Vec<Vec<EigenPair>>,
    pub closed: Vec<ClosedBranch>,
    /// Case 2: κ₁ = 0.
    pub case2: Vec<Vec<EigenPair>>,
    /// Case 3: κ₂ = κ₃ = 0, so d₁ = 6.
    pub case3: Vec<Vec<EigenPair>>,
}

fn sorted(mut v: Vec<EigenPair>) -> Vec<EigenPair> {
    v.sort();
    v
}

/// Solutions for pairs over a d-tuple, by trying every factorization.
fn lift(ds: &[i64], count: usize, out: &mut BTreeSet<Vec<EigenPair>>) {
    let choices: Vec<Vec<EigenPair>> = ds.iter().map(|&d| EigenPair::factorizations(d)).collect();
    let mut idx = vec![0usize; ds.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    loop {
        let pick: Vec<EigenPair> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if relations_hold(&pick, count) && realizable(&pick) {
            out.insert(sorted(pick));
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return;
            }
            idx[j] += 1;
            if idx[j] < choices[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// a·s² + b·s + c as rationals.
#[derive(Clone, Debug)]
struct Quadratic {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl Quadratic {
    /// 4ac − b², zero iff the quadratic is a square of a linear polynomial (a = 1).
    fn defect(&self) -> Rational {
        qi(4) * &self.a * &self.c - &self.b * &self.b
    }

    /// With a = 1 and nonzero defect, integer s for which the value can be
    /// an integer square lie in this range: writing m for the common
    /// denominator, W² − N² = m²·defect with N = m(2s + b), so |N| is at most
    /// (|m²·defect| + 1)/2.
    fn square_range(&self) -> (i64, i64) {
        let m = self.b.denom().lcm(self.c.denom());
        let mr = Rational::from_integer(m.clone());
        let r = (self.defect() * &mr * &mr).abs();
        let nmax = (r + Rational::one()) / qi(2);
        let lo = ((-&nmax / &mr - &self.b) / qi(2)).floor().to_integer();
        let hi = ((&nmax / &mr - &self.b) / qi(2)).ceil().to_integer();
        (lo.to_i64().unwrap_or(i64::MIN / 4), hi.to_i64().unwrap_or(i64::MAX / 4))
    }
}

fn integer_value(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

enum BranchResult {
    Family(EigenFamily),
    Finite { solutions: Vec<Vec<EigenPair>>, checked: usize },
}

/// Case 1 with lead pair of product 6: then d₃ = −d₂, and the remaining
/// relations are solved in the trace s = t₂.
fn six_branch(lead: EigenPair) -> Result<BranchResult, ClassifierError> {
    let t1 = lead.t();
    if t1 == 7 {
        // δ = 0 forces t₂ = t₃ = 7; (u₂, 7 − u₂) needs 49 + 4u₂(7 − u₂) to be a
        // square for the third pair, which is negative once |2u₂ − 7| ≥ 10.
        let mut sols = Vec::new();
        let mut checked = 0;
        for u2 in -1..=8 {
            checked += 1;
            let p2 = EigenPair::new(u2, 7 - u2);
            if p2.d() == 0 {
                continue;
            }
            if let Some(p3) = EigenPair::from_trace_det(7, -p2.d()) {
                let pick = vec![lead, p2, p3];
                if relations_hold(&pick, 3) {
                    sols.push(sorted(pick));
                }
            }
        }
        return Ok(BranchResult::Finite { solutions: sols, checked });
    }
    // e = d₂ = 6(2s − 7 − t₁)/(7 − t₁), t₃ = 7 + t₁ − s.
    let k7 = qi(7 - t1);
    let tsum = qi(7 + t1);
    let e_lin = qi(12) / &k7;
    let e_const = -(qi(6) * &tsum) / &k7;
    let disc2 = Quadratic {
        a: qi(1),
        b: -(qi(4) * &e_lin),
        c: -(qi(4) * &e_const),
    };
    let disc3 = Quadratic {
        a: qi(1),
        b: &(-(qi(2) * &tsum)) + &(qi(4) * &e_lin),
        c: &(&tsum * &tsum) + &(qi(4) * &e_const),
    };
    if disc2.defect().is_zero() && disc3.defect().is_zero() {
        // Both discriminants are (s + b/2)²; the roots are affine in s.
        let fixed2 = -(&disc2.b / qi(4));
        let k_shift = &disc2.b / qi(4); // k = s + b₂/4
        let fixed3 = (&tsum + &(&disc3.b / qi(2))) / qi(2);
        // moving₃ = (7 + t₁ − 2s − b₃/2)/2 with s = k − b₂/4.
        let m3_const = (&(&tsum - &(&disc3.b / qi(2))) + &(qi(2) * &k_shift)) / qi(2);
        let as_int = |r: &Rational| {
            integer_value(r).ok_or_else(|| ClassifierError::Unsupported(format!("non-integral family coefficient {r}")))
        };
        let pairs = [
            AffinePair {
                fixed: as_int(&fixed2)?,
                c0: 0,
                c1: 1,
            },
            AffinePair {
                fixed: as_int(&fixed3)?,
                c0: as_int(&m3_const)?,
                c1: -1,
            },
        ];
        let probe = 1000;
        let mut fam = EigenFamily {
            lead,
            pairs,
            symmetric: false,
        };
        fam.symmetric = fam.at(probe) == fam.at(-probe);
        return Ok(BranchResult::Family(fam));
    }
    // Otherwise one discriminant bounds s.
    let (lo, hi) = [&disc2, &disc3]
        .iter()
        .filter(|d| !d.defect().is_zero())
        .map(|d| d.square_range())
        .fold((i64::MIN, i64::MAX), |acc, r| (acc.0.max(r.0), acc.1.min(r.1)));
    let mut sols = Vec::new();
    let mut checked = 0;
    for s in lo..=hi {
        checked += 1;
        let Some(e) = integer_value(&(&(&e_lin * qi(s)) + &e_const)) else { continue };
        if e == 0 {
            continue;
        }
        let (Some(p2), Some(p3)) = (EigenPair::from_trace_det(s, e), EigenPair::from_trace_det(7 + t1 - s, -e)) else {
            continue;
        };
        let pick = vec![lead, p2, p3];
        if relations_hold(&pick, 3) && realizable(&pick) {
            sols.push(sorted(pick));
        }
    }
    Ok(BranchResult::Finite { solutions: sols, checked })
}

/// Every integer solution of the relations, by case.
pub fn solve_eigen_relations() -> Result<RelationSolutions, ClassifierError> {
    let sixth = q(1, 6);
    let mut case1 = BTreeSet::new();
    for ds in enumerate_unit_fractions(&sixth, 3, &[6])?.finite {
        lift(&ds, 3, &mut case1);
    }
    let mut families = Vec::new();
    let mut sporadic = BTreeSet::new();
    let mut closed = Vec::new();
    for lead in EigenPair::factorizations(6).into_iter().rev() {
        match six_branch(lead)? {
            BranchResult::Family(f) => families.push(f),
            BranchResult::Finite { solutions, checked } => {
                if solutions.is_empty() {
                    closed.push(ClosedBranch {
                        lead,
                        checked,
                        reason: "the remaining pairs are never integers".into(),
                    });
                }
                sporadic.extend(solutions);
            }
        }
    }
    let mut case2 = BTreeSet::new();
    for ds in enumerate_unit_fractions(&sixth, 2, &[])?.finite {
        lift(&ds, 2, &mut case2);
    }
    let case3: Vec<Vec<EigenPair>> = EigenPair::factorizations(6).into_iter().rev().map(|p| vec![p]).collect();
    Ok(RelationSolutions {
        case1: case1.into_iter().collect(),
        families,
        case1_sporadic: sporadic.into_iter().collect(),
        closed,
        case2: case2.into_iter().collect(),
        case3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(u: i64, v: i64) -> EigenPair {
        EigenPair::new(u, v)
    }

    #[test]
    fn unit_fractions_small_cases() {
        let one = enumerate_unit_fractions(&qi(1), 2, &[]).unwrap();
        assert_eq!(one.finite, vec![vec![2, 2]]);
        assert!(one.families.is_empty());
        let pairs = enumerate_unit_fractions(&q(1, 6), 2, &[]).unwrap();
        assert!(pairs.finite.contains(&vec![3, -6]));
        for t in &pairs.finite {
            assert_eq!(recip(t[0]) + recip(t[1]), q(1, 6));
        }
        let triples = enumerate_unit_fractions(&q(1, 6), 3, &[6]).unwrap();
        assert!(triples.finite.contains(&vec![10, 10, -30]));
        assert!(triples.families.is_empty());
        let with_six = enumerate_unit_fractions(&q(1, 6), 3, &[]).unwrap();
        assert_eq!(with_six.families, vec![vec![6]]);
        assert!(with_six.finite.iter().all(|t| !t.contains(&6)));
    }

    #[test]
    fn unit_fraction_output_is_canonical() {
        let s = enumerate_unit_fractions(&q(1, 6), 3, &[]).unwrap();
        let set: BTreeSet<&Vec<i64>> = s.finite.iter().collect();
        assert_eq!(set.len(), s.finite.len());
        for t in &s.finite {
            let mut c = t.clone();
            c.sort_by_key(|&d| key(d));
            assert_eq!(&c, t);
        }
    }

    #[test]
    fn trace_det_round_trip() {
        assert_eq!(EigenPair::from_trace_det(7, 10), Some(ep(2, 5)));
        assert_eq!(EigenPair::from_trace_det(7, -30), Some(ep(-3, 10)));
        assert_eq!(EigenPair::from_trace_det(7, 6), Some(ep(1, 6)));
        assert_eq!(EigenPair::from_trace_det(7, 11), None);
        assert_eq!(EigenPair::factorizations(6), vec![ep(-6, -1), ep(-3, -2), ep(1, 6), ep(2, 3)]);
    }

    #[test]
    fn case_one_without_six() {
        let s = solve_eigen_relations().unwrap();
        assert_eq!(s.case1, vec![vec![ep(-5, 12), ep(2, 5), ep(3, 4)], vec![ep(-3, 10), ep(2, 5), ep(2, 5)]]);
    }

    #[test]
    fn case_two_list() {
        let s = solve_eigen_relations().unwrap();
        let want: BTreeSet<Vec<EigenPair>> = [
            vec![ep(-2, 3), ep(1, 3)],
            vec![ep(-3, 4), ep(1, 4)],
            vec![ep(-5, 6), ep(1, 5)],
            vec![ep(2, 4), ep(4, 6)],
            vec![ep(3, 4), ep(3, 4)],
            vec![ep(3, 3), ep(3, 6)],
        ]
        .into_iter()
        .collect();
        assert_eq!(s.case2.into_iter().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn six_branches() {
        let s = solve_eigen_relations().unwrap();
        let names: Vec<String> = s.families.iter().map(|f| f.to_string()).collect();
        assert_eq!(names, vec!["{(2,3),(6,k),(6,-k)}", "{(-3,-2),(1,k),(1,-k)}"]);
        assert!(s.families.iter().all(|f| f.symmetric));
        assert!(s.case1_sporadic.is_empty());
        let leads: Vec<EigenPair> = s.closed.iter().map(|c| c.lead).collect();
        assert_eq!(leads, vec![ep(1, 6), ep(-6, -1)]);
        assert_eq!(s.families[0].exceptional(), vec![1, 6]);
        assert_eq!(s.families[1].exceptional(), vec![1, 6]);
    }

    #[test]
    fn families_satisfy_relations_at_sample_parameters() {
        let s = solve_eigen_relations().unwrap();
        for f in &s.families {
            for k in 2..=12 {
                assert!(relations_hold(&f.at(k), 3), "{f} at k={k}");
            }
        }
    }
}

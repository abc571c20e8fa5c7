#![allow(dead_code)]

use std::collections::BTreeSet;

use chazy_core::classifier::{realizable, EigenPair, RelationSolutions};

pub type Pair = (i64, i64);

fn pairs_in_box(bound: i64) -> Vec<Pair> {
    let mut v = Vec::new();
    for u in -bound..=bound {
        for w in u..=bound {
            if u != 0 && w != 0 {
                v.push((u, w));
            }
        }
    }
    v
}

/// (u, v) with u + v = t, uv = d, when integral.
fn split(t: i128, d: i128) -> Option<Pair> {
    let disc = t * t - 4 * d;
    if disc < 0 {
        return None;
    }
    let r = disc.isqrt();
    if r * r != disc || (t + r) % 2 != 0 {
        return None;
    }
    Some((((t - r) / 2) as i64, ((t + r) / 2) as i64))
}

fn canonical(mut v: Vec<Pair>) -> Vec<Pair> {
    v.sort();
    v
}

fn is_realizable(v: &[Pair]) -> bool {
    let sevens = v.iter().filter(|(u, w)| u + w == 7).count();
    sevens == 0 || sevens == v.len()
}

/// Triples with Σ1/d = 1/6, Σt/d = 7/6, Σt²/d = 49/6, by solving the first two
/// relations for the third pair and testing the last in integers.
pub fn brute_force_case1(bound: i64) -> BTreeSet<Vec<Pair>> {
    let ps = pairs_in_box(bound);
    let mut out = BTreeSet::new();
    for (i, &(u1, v1)) in ps.iter().enumerate() {
        let (t1, d1) = ((u1 + v1) as i128, (u1 * v1) as i128);
        for &(u2, v2) in &ps[i..] {
            let (t2, d2) = ((u2 + v2) as i128, (u2 * v2) as i128);
            // 1/d3 = (d1d2 − 6d1 − 6d2)/(6d1d2)
            let den = d1 * d2 - 6 * d1 - 6 * d2;
            if den == 0 || (6 * d1 * d2) % den != 0 {
                continue;
            }
            let d3 = 6 * d1 * d2 / den;
            let num = d3 * (7 * d1 * d2 - 6 * t1 * d2 - 6 * t2 * d1);
            if num % (6 * d1 * d2) != 0 {
                continue;
            }
            let t3 = num / (6 * d1 * d2);
            if 6 * (t1 * t1 * d2 * d3 + t2 * t2 * d1 * d3 + t3 * t3 * d1 * d2) != 49 * d1 * d2 * d3 {
                continue;
            }
            let Some((u3, v3)) = split(t3, d3) else { continue };
            if u3.abs() > bound || v3.abs() > bound {
                continue;
            }
            let sol = canonical(vec![(u1, v1), (u2, v2), (u3, v3)]);
            if is_realizable(&sol) {
                out.insert(sol);
            }
        }
    }
    out
}

/// Pairs of pairs with Σ1/d = 1/6 and Σt/d = 7/6.
pub fn brute_force_case2(bound: i64) -> BTreeSet<Vec<Pair>> {
    let ps = pairs_in_box(bound);
    let mut out = BTreeSet::new();
    for &(u1, v1) in &ps {
        let (t1, d1) = ((u1 + v1) as i128, (u1 * v1) as i128);
        if d1 == 6 {
            continue;
        }
        let den = d1 - 6;
        if (6 * d1) % den != 0 {
            continue;
        }
        let d2 = 6 * d1 / den;
        let num = d2 * (7 * d1 - 6 * t1);
        if num % (6 * d1) != 0 {
            continue;
        }
        let Some((u2, v2)) = split(num / (6 * d1), d2) else { continue };
        if u2.abs() > bound || v2.abs() > bound {
            continue;
        }
        let sol = canonical(vec![(u1, v1), (u2, v2)]);
        if is_realizable(&sol) {
            out.insert(sol);
        }
    }
    out
}

pub fn as_pairs(v: &[EigenPair]) -> Vec<Pair> {
    canonical(v.iter().map(|p| (p.u, p.v)).collect())
}

/// Everything the structured enumeration claims inside the box.
pub fn structured_case1(s: &RelationSolutions, bound: i64) -> BTreeSet<Vec<Pair>> {
    let inside = |v: &[Pair]| v.iter().all(|(u, w)| u.abs() <= bound && w.abs() <= bound);
    let mut out: BTreeSet<Vec<Pair>> = s.case1.iter().chain(&s.case1_sporadic).map(|v| as_pairs(v)).collect();
    for f in &s.families {
        for k in -4 * bound..=4 * bound {
            let at = f.at(k);
            let v = as_pairs(&at);
            if inside(&v) && at.iter().all(|p| p.d() != 0) && realizable(&at) {
                out.insert(v);
            }
        }
    }
    out
}

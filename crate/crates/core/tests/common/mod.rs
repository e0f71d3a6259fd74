//! Brute-force oracles, written without the crate's own algorithms.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashSet};

use cstar_flips::{Cone, IntMatrix, LatticeVector};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
        .collect()
}

pub fn matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    if rows.is_empty() {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(rows).unwrap()
}

pub fn vec_i64(v: &LatticeVector) -> Vec<i64> {
    v.to_i64().unwrap()
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `gcd` of all `k × k` minors.
pub fn minor_gcd(m: &[Vec<i128>], k: usize) -> i128 {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut g = 0;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i128>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                .collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

/// Invariant factors `dₖ = Dₖ / Dₖ₋₁` from determinantal divisors.
pub fn invariant_factors_by_minors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=rows.min(cols) {
        let d = minor_gcd(m, k);
        if d == 0 {
            out.extend(std::iter::repeat_n(0, rows.min(cols) - out.len()));
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

pub fn rank(m: &[Vec<i128>]) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    (1..=rows.min(cols))
        .rev()
        .find(|&k| minor_gcd(m, k) != 0)
        .unwrap_or(0)
}

/// Row-style Hermite normal form by Euclid on each column, then reduction above pivots.
pub fn textbook_hnf(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows).filter(|&i| a[i][c] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, p);
            if a[r][c] < 0 {
                for x in a[r].iter_mut() {
                    *x = -*x;
                }
            }
            let mut done = true;
            for i in r + 1..rows {
                let q = a[i][c].div_euclid(a[r][c]);
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[r][j];
                    }
                }
                if a[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        for i in 0..r {
            let q = a[i][c].div_euclid(a[r][c]);
            for j in 0..cols {
                a[i][j] -= q * a[r][j];
            }
        }
        r += 1;
    }
    a
}

fn cross(a: &[i64], b: &[i64]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Facet normals of a full-dimensional cone of rank 2 or 3, by testing
/// every candidate hyperplane through a pair of generators.
pub fn brute_facets(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = gens[0].len();
    let mut out = BTreeSet::new();
    let candidates: Vec<Vec<i64>> = match d {
        2 => gens
            .iter()
            .flat_map(|g| [vec![-g[1], g[0]], vec![g[1], -g[0]]])
            .collect(),
        3 => {
            let mut c = Vec::new();
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    let n = cross(&gens[i], &gens[j]);
                    c.push(n.to_vec());
                    c.push(n.iter().map(|x| -x).collect());
                }
            }
            c
        }
        _ => panic!("rank 2 or 3 only"),
    };
    for n in candidates {
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        if gens.iter().all(|g| dot(&n, g) >= 0) {
            let g = n.iter().fold(0i128, |acc, &x| gcd(acc, x as i128)) as i64;
            out.insert(n.iter().map(|x| x / g).collect::<Vec<_>>());
        }
    }
    out.into_iter().collect()
}

/// Hilbert basis of a full-dimensional cone of rank 2 or 3 whose generators
/// all have positive last coordinate. Every Hilbert basis element lies in a
/// simplicial subcone spanned by generators, hence has last coordinate at
/// most the sum of the `d` largest last coordinates.
pub fn brute_hilbert(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = gens[0].len();
    assert!(gens.iter().all(|g| *g.last().unwrap() > 0));
    let facets = brute_facets(gens);
    let mut lasts: Vec<i64> = gens.iter().map(|g| *g.last().unwrap()).collect();
    lasts.sort_unstable_by(|a, b| b.cmp(a));
    let height: i64 = lasts.iter().take(d).sum();
    let width = gens
        .iter()
        .flat_map(|g| g[..d - 1].iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0)
        * height;
    let inside = |p: &[i64]| facets.iter().all(|n| dot(n, p) >= 0);
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut stack = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == d - 1 {
            for h in 1..=height {
                let mut p = prefix.clone();
                p.push(h);
                if inside(&p) {
                    points.push(p);
                }
            }
            continue;
        }
        for x in -width..=width {
            let mut p = prefix.clone();
            p.push(x);
            stack.push(p);
        }
    }
    let set: HashSet<Vec<i64>> = points.iter().cloned().collect();
    let mut basis: Vec<Vec<i64>> = points
        .iter()
        .filter(|p| {
            !points.iter().any(|q| {
                q.last() < p.last()
                    && set.contains(
                        &p.iter()
                            .zip(q.iter())
                            .map(|(a, b)| a - b)
                            .collect::<Vec<_>>(),
                    )
            })
        })
        .cloned()
        .collect();
    basis.sort();
    basis
}

pub fn bigint(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rows_i128(vs: &[LatticeVector]) -> Vec<Vec<i128>> {
    vs.iter()
        .map(|v| v.to_i64().unwrap().iter().map(|&x| x as i128).collect())
        .collect()
}

/// Equal extremal rays and equal lineality spaces.
pub fn same_cone(a: &Cone, b: &Cone) -> bool {
    let mut ra = a.rays().to_vec();
    let mut rb = b.rays().to_vec();
    ra.sort();
    rb.sort();
    let la = a.lineality();
    let lb = b.lineality();
    let joint: Vec<LatticeVector> = la.iter().chain(lb.iter()).cloned().collect();
    ra == rb
        && rank(&rows_i128(la)) == rank(&rows_i128(lb))
        && rank(&rows_i128(&joint)) == rank(&rows_i128(la))
}

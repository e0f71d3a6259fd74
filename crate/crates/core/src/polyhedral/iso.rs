//! Unimodular isomorphisms between fans, found by backtracking over ray
//! bijections and re-verified independently of the search.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::fan::Fan;
use crate::exact::{rank_of_vectors, rational_inverse, IntMatrix, LatticeVector};

/// Searches for a unimodular `A` with `A·(rays of a) = rays of b` carrying cones to
/// cones. Optional colors restrict which rays may correspond.
pub fn find_isomorphism(a: &Fan, b: &Fan, colors: Option<(&[u32], &[u32])>) -> Option<IntMatrix> {
    let n = a.rank();
    if n != b.rank()
        || a.rays().len() != b.rays().len()
        || a.maximal_cones().len() != b.maximal_cones().len()
    {
        return None;
    }
    let k = a.rays().len();
    let (ca, cb): (Vec<u32>, Vec<u32>) = match colors {
        Some((x, y)) => (x.to_vec(), y.to_vec()),
        None => (vec![0; k], vec![0; k]),
    };
    if ca.len() != k || cb.len() != k {
        return None;
    }
    let deg = |f: &Fan, i: usize| f.maximal_cones().iter().filter(|c| c.contains(&i)).count();
    let sig_a: Vec<(u32, usize)> = (0..k).map(|i| (ca[i], deg(a, i))).collect();
    let sig_b: Vec<(u32, usize)> = (0..k).map(|i| (cb[i], deg(b, i))).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut sizes_a: Vec<usize> = a.maximal_cones().iter().map(Vec::len).collect();
    let mut sizes_b: Vec<usize> = b.maximal_cones().iter().map(Vec::len).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return None;
    }

    let basis = independent_rays(a)?;
    if basis.len() != n {
        return None;
    }
    let src = IntMatrix::from_vectors(&a.vectors_of(&basis), n).transpose();
    let src_inv = rational_inverse(&src)?;
    let share_a = pair_relation(a);
    let share_b = pair_relation(b);

    let mut search = Search {
        a,
        b,
        basis: &basis,
        src_inv: &src_inv,
        sig_a: &sig_a,
        sig_b: &sig_b,
        share_a: &share_a,
        share_b: &share_b,
        assigned: Vec::new(),
        used: vec![false; k],
    };
    search.run()
}

struct Search<'a> {
    a: &'a Fan,
    b: &'a Fan,
    basis: &'a [usize],
    src_inv: &'a [Vec<BigRational>],
    sig_a: &'a [(u32, usize)],
    sig_b: &'a [(u32, usize)],
    share_a: &'a [Vec<bool>],
    share_b: &'a [Vec<bool>],
    assigned: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self) -> Option<IntMatrix> {
        let depth = self.assigned.len();
        if depth == self.basis.len() {
            return self.complete();
        }
        let src = self.basis[depth];
        for t in 0..self.b.rays().len() {
            if self.used[t] || self.sig_a[src] != self.sig_b[t] {
                continue;
            }
            let consistent = self.assigned.iter().enumerate().all(|(d, &img)| {
                let prev = self.basis[d];
                self.share_a[prev][src] == self.share_b[img][t]
            });
            if !consistent {
                continue;
            }
            self.used[t] = true;
            self.assigned.push(t);
            if let Some(m) = self.run() {
                return Some(m);
            }
            self.assigned.pop();
            self.used[t] = false;
        }
        None
    }

    fn complete(&self) -> Option<IntMatrix> {
        let n = self.a.rank();
        let dst: Vec<LatticeVector> = self
            .assigned
            .iter()
            .map(|&t| self.b.rays()[t].clone())
            .collect();
        // A = D · S⁻¹ with S, D having the basis rays and their images as columns
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let s: BigRational = (0..n)
                    .map(|k| BigRational::from_integer(dst[k].0[i].clone()) * &self.src_inv[k][j])
                    .sum();
                if !s.is_integer() {
                    return None;
                }
                entries.push(s.to_integer());
            }
        }
        let m = IntMatrix::new(n, n, entries).ok()?;
        if !m.determinant().ok()?.abs().is_one() {
            return None;
        }
        verify_isomorphism(self.a, self.b, &m).then_some(m)
    }
}

/// Greedy choice of linearly independent rays, preferring rays of one maximal cone.
fn independent_rays(f: &Fan) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    let order: Vec<usize> = f
        .maximal_cones()
        .first()
        .into_iter()
        .flatten()
        .copied()
        .chain(0..f.rays().len())
        .collect();
    for i in order {
        if chosen.contains(&i) {
            continue;
        }
        let mut trial: Vec<&LatticeVector> = chosen.iter().map(|&c| &f.rays()[c]).collect();
        trial.push(&f.rays()[i]);
        if rank_of_vectors(&trial, f.rank()) == trial.len() {
            chosen.push(i);
        }
        if chosen.len() == f.rank() {
            break;
        }
    }
    Some(chosen)
}

fn pair_relation(f: &Fan) -> Vec<Vec<bool>> {
    let k = f.rays().len();
    let mut rel = vec![vec![false; k]; k];
    for c in f.maximal_cones() {
        for &i in c {
            for &j in c {
                rel[i][j] = true;
            }
        }
    }
    rel
}

/// Checks, without reference to any search, that `m` is unimodular, maps the
/// rays of `a` bijectively onto the rays of `b`, and maps maximal cones onto
/// maximal cones.
pub fn verify_isomorphism(a: &Fan, b: &Fan, m: &IntMatrix) -> bool {
    if m.rows() != b.rank() || m.cols() != a.rank() || !m.is_unimodular() {
        return false;
    }
    let mut image_index = Vec::with_capacity(a.rays().len());
    for r in a.rays() {
        let Ok(img) = m.apply(r) else { return false };
        match b.ray_index(&img) {
            Some(i) => image_index.push(i),
            None => return false,
        }
    }
    let distinct: BTreeSet<usize> = image_index.iter().copied().collect();
    if distinct.len() != b.rays().len() {
        return false;
    }
    let mapped: BTreeSet<Vec<usize>> = a
        .maximal_cones()
        .iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|&i| image_index[i]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let target: BTreeSet<Vec<usize>> = b.maximal_cones().iter().cloned().collect();
    mapped == target
}

/// Ray colors for the given lattice maps: bit `k` is set when map `k` sends the ray to zero.
pub fn kernel_colors(f: &Fan, maps: &[&IntMatrix]) -> Vec<u32> {
    f.rays()
        .iter()
        .map(|r| {
            maps.iter().enumerate().fold(0u32, |acc, (k, m)| {
                let zero = m.apply(r).map(|v| v.is_zero()).unwrap_or(false);
                if zero {
                    acc | (1 << k)
                } else {
                    acc
                }
            })
        })
        .collect()
}

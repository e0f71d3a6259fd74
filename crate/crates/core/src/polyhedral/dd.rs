//! Double description: generators of `{x : ⟨aᵢ, x⟩ ≥ 0}` by incremental
//! Fourier–Motzkin elimination. Adjacency of rays is decided by the rank of
//! the constraints active on both.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::{hermite_normal_form, rank_of_rows, IntMatrix, LatticeVector};

/// Generators of a polyhedral cone: extreme rays modulo the lineality space,
/// plus a lattice basis of the lineality space.
#[derive(Debug, Clone)]
pub(crate) struct Generators {
    pub rays: Vec<LatticeVector>,
    pub lineality: Vec<LatticeVector>,
}

pub(crate) fn generators_of(dim: usize, constraints: &[LatticeVector]) -> Generators {
    let mut lineality: Vec<LatticeVector> = (0..dim).map(|i| LatticeVector::unit(dim, i)).collect();
    let mut rays: Vec<LatticeVector> = Vec::new();
    let mut processed: Vec<&LatticeVector> = Vec::new();

    for a in constraints {
        if a.is_zero() {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut c = a.dot(&l);
            if c.is_negative() {
                l = -&l;
                c = -c;
            }
            for other in lineality.iter_mut() {
                let s = a.dot(other);
                if !s.is_zero() {
                    *other = (&other.scaled(&c) - &l.scaled(&s)).primitive();
                }
            }
            for r in rays.iter_mut() {
                let s = a.dot(r);
                if !s.is_zero() {
                    *r = (&r.scaled(&c) - &l.scaled(&s)).primitive();
                }
            }
            rays.push(l.primitive());
            processed.push(a);
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| a.dot(r)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            processed.push(a);
            continue;
        }
        let Some(target_rank) = (dim - lineality.len()).checked_sub(2) else {
            rays.retain(|r| !a.dot(r).is_negative());
            processed.push(a);
            continue;
        };
        let active: Vec<Vec<bool>> = rays
            .iter()
            .map(|r| processed.iter().map(|c| c.dot(r).is_zero()).collect())
            .collect();

        let mut next: Vec<LatticeVector> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !values[i].is_negative() {
                next.push(r.clone());
            }
        }
        for (i, rp) in rays.iter().enumerate() {
            if !values[i].is_positive() {
                continue;
            }
            for (j, rn) in rays.iter().enumerate() {
                if !values[j].is_negative() {
                    continue;
                }
                let common: Vec<usize> = (0..processed.len())
                    .filter(|&k| active[i][k] && active[j][k])
                    .collect();
                if common.len() < target_rank {
                    continue;
                }
                let rows: Vec<Vec<BigInt>> =
                    common.iter().map(|&k| processed[k].0.clone()).collect();
                if rank_of_rows(&rows, dim) != target_rank {
                    continue;
                }
                let combo = &rn.scaled(&values[i]) - &rp.scaled(&values[j]);
                next.push(combo.primitive());
            }
        }
        rays = next;
        processed.push(a);
    }

    // canonical lineality basis, then rays projected orthogonally to it
    let lineality = if lineality.is_empty() {
        lineality
    } else {
        let (h, _) = hermite_normal_form(&IntMatrix::from_vectors(&lineality, dim));
        h.row_vectors()
            .into_iter()
            .filter(|v| !v.is_zero())
            .collect()
    };
    let mut rays: Vec<LatticeVector> = rays
        .into_iter()
        .map(|r| orthogonal_to(&r, &lineality))
        .filter(|r| !r.is_zero())
        .collect();
    rays.sort();
    rays.dedup();
    Generators { rays, lineality }
}

/// Primitive integer multiple of the component of `v` orthogonal to `span(basis)`.
fn orthogonal_to(v: &LatticeVector, basis: &[LatticeVector]) -> LatticeVector {
    if basis.is_empty() {
        return v.primitive();
    }
    // Gram–Schmidt on the basis, kept integral by scaling.
    let mut ortho: Vec<LatticeVector> = Vec::new();
    for b in basis {
        let mut w = b.clone();
        for o in &ortho {
            let num = w.dot(o);
            if !num.is_zero() {
                let den = o.dot(o);
                w = (&w.scaled(&den) - &o.scaled(&num)).primitive();
            }
        }
        ortho.push(w);
    }
    let mut w = v.clone();
    for o in &ortho {
        let num = w.dot(o);
        if !num.is_zero() {
            let den = o.dot(o);
            w = (&w.scaled(&den) - &o.scaled(&num)).primitive();
        }
    }
    w.primitive()
}

//! Hilbert bases of pointed rational cones.
//!
//! Candidates are the rays together with the lattice points of the half-open
//! fundamental parallelepipeds of a pulling triangulation. They are then
//! reduced in order of increasing degree against the irreducibles found so far.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::cone::Cone;
use crate::exact::{
    integer_coordinates, integer_kernel, rank_of_vectors, smith_normal_form, IntMatrix,
    LatticeVector,
};
use crate::Error;

/// The unique minimal generating set of the monoid `C ∩ Zⁿ`, sorted lexicographically.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<LatticeVector>, Error> {
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    if c.rays().is_empty() {
        return Ok(Vec::new());
    }
    if c.is_full_dimensional() {
        return full_dimensional_basis(c);
    }
    // Work in a basis of the saturated lattice span(C) ∩ Zⁿ.
    let equations = IntMatrix::from_vectors(&c.hrep().equations, c.rank());
    let span_basis = integer_kernel(&equations);
    let local_rays: Vec<LatticeVector> = c
        .rays()
        .iter()
        .map(|r| {
            integer_coordinates(&span_basis, r)
                .map(LatticeVector)
                .ok_or_else(|| Error::Invalid("ray outside its own span lattice".into()))
        })
        .collect::<Result<_, _>>()?;
    let local = Cone::new(span_basis.len(), &local_rays)?;
    let mut out: Vec<LatticeVector> = full_dimensional_basis(&local)?
        .into_iter()
        .map(|h| {
            let mut v = LatticeVector::zero(c.rank());
            for (coef, b) in h.0.iter().zip(&span_basis) {
                v = &v + &b.scaled(coef);
            }
            v
        })
        .collect();
    out.sort();
    Ok(out)
}

fn full_dimensional_basis(c: &Cone) -> Result<Vec<LatticeVector>, Error> {
    let rank = c.rank();
    let grading = c
        .facet_normals()
        .iter()
        .fold(LatticeVector::zero(rank), |acc, n| &acc + n);

    let mut candidates: BTreeSet<LatticeVector> = c.rays().iter().cloned().collect();
    for simplex in triangulate(c) {
        let gens: Vec<LatticeVector> = simplex.iter().map(|&i| c.rays()[i].clone()).collect();
        for p in parallelepiped_points(&gens)? {
            if !p.is_zero() {
                candidates.insert(p);
            }
        }
    }

    let mut graded: Vec<(BigInt, LatticeVector)> = candidates
        .into_iter()
        .map(|v| (grading.dot(&v), v))
        .collect();
    graded.sort();

    let mut basis: Vec<(BigInt, LatticeVector)> = Vec::new();
    for (deg, v) in graded {
        let reducible = basis
            .iter()
            .filter(|(d, _)| d < &deg)
            .any(|(_, h)| c.contains(&(&v - h)).unwrap_or(false));
        if !reducible {
            basis.push((deg, v));
        }
    }
    let mut out: Vec<LatticeVector> = basis.into_iter().map(|(_, v)| v).collect();
    out.sort();
    Ok(out)
}

/// Pulling triangulation of a full-dimensional pointed cone, as sets of ray indices.
pub(crate) fn triangulate(c: &Cone) -> Vec<Vec<usize>> {
    let facets = c.facet_ray_sets();
    let all: Vec<usize> = (0..c.rays().len()).collect();
    let mut out = Vec::new();
    triangulate_face(c, &facets, &all, c.dim(), &mut out);
    out
}

fn triangulate_face(
    c: &Cone,
    facets: &[Vec<usize>],
    face: &[usize],
    dim: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if face.len() == dim {
        out.push(face.to_vec());
        return;
    }
    let apex = face[0];
    for sub in subfacets(c, facets, face, dim) {
        if sub.contains(&apex) {
            continue;
        }
        let mut pieces = Vec::new();
        triangulate_face(c, facets, &sub, dim - 1, &mut pieces);
        for mut p in pieces {
            p.push(apex);
            p.sort_unstable();
            out.push(p);
        }
    }
}

/// Facets of a face: maximal intersections with facets of the cone having dimension `dim - 1`.
fn subfacets(c: &Cone, facets: &[Vec<usize>], face: &[usize], dim: usize) -> Vec<Vec<usize>> {
    let mut cands: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let meet: Vec<usize> = face.iter().copied().filter(|i| f.contains(i)).collect();
        if meet.len() == face.len() || meet.len() < dim - 1 {
            continue;
        }
        let vs: Vec<&LatticeVector> = meet.iter().map(|&i| &c.rays()[i]).collect();
        if rank_of_vectors(&vs, c.rank()) == dim - 1 {
            cands.insert(meet);
        }
    }
    cands.into_iter().collect()
}

/// Lattice points `Σ λᵢ gᵢ` with `λ ∈ [0,1)^d` for linearly independent generators
/// spanning `ℚ^d`.
pub(crate) fn parallelepiped_points(gens: &[LatticeVector]) -> Result<Vec<LatticeVector>, Error> {
    let d = gens.len();
    // columns are the generators
    let g = IntMatrix::from_vectors(gens, d).transpose();
    let (snf, u, _) = smith_normal_form(&g);
    let factors: Vec<BigInt> = (0..d).map(|i| snf[(i, i)].clone()).collect();
    if factors.iter().any(Zero::is_zero) {
        return Err(Error::Invalid("generators are linearly dependent".into()));
    }
    // cosets of Zᵈ / G·Zᵈ are represented by U⁻¹·c with 0 ≤ cᵢ < dᵢ
    let u_inv = crate::exact::rational_inverse(&u)
        .ok_or_else(|| Error::Invalid("singular transform".into()))?;
    let g_inv = crate::exact::rational_inverse(&g)
        .ok_or_else(|| Error::Invalid("singular generators".into()))?;

    let mut reps: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); d]];
    for (i, f) in factors.iter().enumerate() {
        let mut next = Vec::new();
        for r in &reps {
            let mut k = BigInt::zero();
            while &k < f {
                let mut r2 = r.clone();
                r2[i] = k.clone();
                next.push(r2);
                k += 1;
            }
        }
        reps = next;
    }

    let mut out = Vec::with_capacity(reps.len());
    for cvec in reps {
        let x: Vec<BigRational> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| &u_inv[i][j] * BigRational::from_integer(cvec[j].clone()))
                    .sum()
            })
            .collect();
        // λ = G⁻¹x, reduced into [0,1)
        let lambda: Vec<BigRational> = (0..d)
            .map(|i| {
                let l: BigRational = (0..d).map(|j| &g_inv[i][j] * &x[j]).sum();
                fractional(&l)
            })
            .collect();
        let point: Vec<BigInt> = (0..d)
            .map(|i| {
                let s: BigRational = (0..d)
                    .map(|j| BigRational::from_integer(g[(i, j)].clone()) * &lambda[j])
                    .sum();
                debug_assert!(s.is_integer());
                s.to_integer()
            })
            .collect();
        out.push(LatticeVector(point));
    }
    Ok(out)
}

fn fractional(x: &BigRational) -> BigRational {
    let fl = x.numer().div_floor(x.denom());
    let r = x - BigRational::from_integer(fl);
    debug_assert!(!r.is_negative());
    r
}

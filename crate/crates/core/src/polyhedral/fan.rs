use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cone::{cone_is_subset, Cone};
use crate::exact::{integer_kernel, invariant_factors, IntMatrix, LatticeVector};
use crate::Error;

/// A fan: primitive rays sorted lexicographically and maximal cones given as
/// sorted lists of ray indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<Vec<usize>>,
}

/// On-disk form of a fan (0-based ray indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub lattice_rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds a fan from maximal cones given by generators. Each cone is
    /// reduced to its extremal rays; cones that are faces of other listed
    /// cones are dropped.
    pub fn from_cones(rank: usize, cones: &[Vec<LatticeVector>]) -> Result<Self, Error> {
        let mut ray_cones: Vec<Vec<LatticeVector>> = Vec::new();
        for gens in cones {
            let c = Cone::new(
                rank,
                &gens
                    .iter()
                    .map(LatticeVector::primitive)
                    .collect::<Vec<_>>(),
            )?;
            if !c.is_pointed() {
                return Err(Error::NotPointed);
            }
            ray_cones.push(c.rays().to_vec());
        }
        Ok(Self::assemble(rank, ray_cones))
    }

    /// Builds a fan from cones whose generators are already primitive and extremal.
    pub(crate) fn from_extremal_cones(rank: usize, cones: Vec<Vec<LatticeVector>>) -> Self {
        Self::assemble(rank, cones)
    }

    fn assemble(rank: usize, cones: Vec<Vec<LatticeVector>>) -> Self {
        let rays: Vec<LatticeVector> = cones
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: BTreeMap<&LatticeVector, usize> =
            rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut sets: BTreeSet<Vec<usize>> = cones
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> = c.iter().map(|r| index[r]).collect();
                idx.sort_unstable();
                idx.dedup();
                idx
            })
            .collect();
        // drop cones whose ray set is contained in another one
        let all: Vec<Vec<usize>> = sets.iter().cloned().collect();
        sets.retain(|c| {
            !all.iter()
                .any(|d| d != c && c.iter().all(|i| d.contains(i)))
        });
        Self {
            rank,
            rays,
            cones: sets.into_iter().collect(),
        }
    }

    /// The fan consisting of one cone and its faces.
    pub fn from_cone(cone: &Cone) -> Self {
        Self::assemble(cone.rank(), vec![cone.rays().to_vec()])
    }

    pub fn from_json(json: &FanJson) -> Result<Self, Error> {
        let rays: Vec<LatticeVector> = json
            .rays
            .iter()
            .map(|r| LatticeVector::from_i64(r))
            .collect();
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != json.lattice_rank {
                return Err(Error::Invalid(format!(
                    "rays[{i}] has length {}, expected {}",
                    r.dim(),
                    json.lattice_rank
                )));
            }
            if !r.is_primitive() {
                return Err(Error::Invalid(format!(
                    "rays[{i}] = {r:?} is not primitive"
                )));
            }
        }
        let mut cones = Vec::new();
        for (ci, c) in json.maximal_cones.iter().enumerate() {
            let mut gens = Vec::new();
            for &i in c {
                gens.push(
                    rays.get(i)
                        .ok_or_else(|| {
                            Error::Invalid(format!(
                                "maximal_cones[{ci}] references missing ray {i}"
                            ))
                        })?
                        .clone(),
                );
            }
            cones.push(gens);
        }
        Self::from_cones(json.lattice_rank, &cones)
    }

    pub fn to_json(&self) -> Result<FanJson, Error> {
        let rays = self
            .rays
            .iter()
            .map(|r| {
                r.to_i64()
                    .ok_or_else(|| Error::Invalid("ray coordinate exceeds 64 bits".into()))
            })
            .collect::<Result<_, _>>()?;
        Ok(FanJson {
            lattice_rank: self.rank,
            rays,
            maximal_cones: self.cones.clone(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn ray_index(&self, r: &LatticeVector) -> Option<usize> {
        self.rays.binary_search(r).ok()
    }

    pub fn cone(&self, i: usize) -> Cone {
        self.cone_of(&self.cones[i])
    }

    pub fn cone_of(&self, ray_indices: &[usize]) -> Cone {
        Cone::from_extremal_rays(
            self.rank,
            ray_indices.iter().map(|&i| self.rays[i].clone()).collect(),
        )
    }

    pub fn vectors_of(&self, ray_indices: &[usize]) -> Vec<LatticeVector> {
        ray_indices.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Every cone of the fan (faces of maximal cones) as sorted ray-index sets.
    pub fn all_cones(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for c in &self.cones {
            let cone = self.cone_of(c);
            if cone.rays().len() == c.len() && self.is_simplicial_set(c) {
                // every subset of a simplicial cone's rays is a face
                for mask in 0u64..(1u64 << c.len()) {
                    out.insert(
                        (0..c.len())
                            .filter(|b| mask >> b & 1 == 1)
                            .map(|b| c[b])
                            .collect(),
                    );
                }
            } else {
                for face in cone.face_ray_sets() {
                    // face indices refer to the sorted rays of `cone`, which follow c's order
                    out.insert(face.iter().map(|&k| c[k]).collect());
                }
            }
        }
        out
    }

    fn is_simplicial_set(&self, c: &[usize]) -> bool {
        self.cone_of(c).face_dim(&(0..c.len()).collect::<Vec<_>>()) == c.len()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| self.is_simplicial_set(c))
    }

    /// All maximal cones are smooth.
    pub fn is_smooth(&self) -> bool {
        self.cones
            .iter()
            .all(|c| self.cone_of(c).is_smooth().unwrap_or(false))
    }

    pub fn support_contains(&self, v: &LatticeVector) -> Result<bool, Error> {
        for c in &self.cones {
            if self.cone_of(c).contains(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Index of some maximal cone containing `v`.
    pub fn containing_cone(&self, v: &LatticeVector) -> Result<Option<usize>, Error> {
        for (i, c) in self.cones.iter().enumerate() {
            if self.cone_of(c).contains(v)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Whether the given ray-index set is a cone of this fan.
    pub fn has_cone(&self, rays: &[usize]) -> bool {
        let mut sorted = rays.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.cones.iter().any(|c| {
            if !sorted.iter().all(|i| c.contains(i)) {
                return false;
            }
            if self.is_simplicial_set(c) {
                return true;
            }
            let local: Vec<usize> = sorted
                .iter()
                .map(|i| c.iter().position(|j| j == i).unwrap())
                .collect();
            self.cone_of(c).face_ray_sets().contains(&local)
        })
    }

    /// Whether the cone generated by `vectors` is (exactly) a cone of this fan.
    pub fn has_cone_generated_by(&self, vectors: &[LatticeVector]) -> bool {
        let mut idx = Vec::with_capacity(vectors.len());
        for v in vectors {
            match self.ray_index(v) {
                Some(i) => idx.push(i),
                None => return false,
            }
        }
        self.has_cone(&idx)
    }

    /// Checks that any two maximal cones meet in a common face. The
    /// intersection is computed from the union of both inequality systems and
    /// compared against the smallest face of each cone containing it.
    pub fn validate(&self) -> Result<(), Error> {
        let cones: Vec<Cone> = self.cones.iter().map(|c| self.cone_of(c)).collect();
        for c in &cones {
            if !c.is_pointed() || Cone::new(self.rank, c.rays())?.rays().len() != c.rays().len() {
                return Err(Error::Invalid(format!(
                    "cone {:?} has non-extremal generators",
                    c.rays()
                )));
            }
        }
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                let (a, b) = (&cones[i], &cones[j]);
                let common: Vec<LatticeVector> = a
                    .rays()
                    .iter()
                    .filter(|r| b.rays().contains(r))
                    .cloned()
                    .collect();
                let mut constraints: Vec<LatticeVector> = a.facet_normals().to_vec();
                constraints.extend(b.facet_normals().iter().cloned());
                for e in a.hrep().equations.iter().chain(&b.hrep().equations) {
                    constraints.push(e.clone());
                    constraints.push(-e);
                }
                let meet = Cone::from_inequalities(self.rank, &constraints)?;
                let mut meet_rays = meet.rays().to_vec();
                meet_rays.sort();
                let mut common_sorted = common.clone();
                common_sorted.sort();
                if meet_rays != common_sorted {
                    return Err(Error::Invalid(format!(
                        "maximal cones {:?} and {:?} intersect in {:?}, which is not a common face",
                        self.cones[i], self.cones[j], meet_rays
                    )));
                }
                // the common rays must span a face of each cone
                for c in [a, b] {
                    let face = c.minimal_face_containing(&common);
                    if face.len() != common.len() {
                        return Err(Error::Invalid(format!(
                            "intersection of {:?} and {:?} is not a face",
                            self.cones[i], self.cones[j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every maximal cone of `self` lies in some cone of `coarser`.
    pub fn refines(&self, coarser: &Fan) -> Result<bool, Error> {
        'outer: for c in &self.cones {
            let gens = self.vectors_of(c);
            for d in &coarser.cones {
                if cone_is_subset(&gens, &coarser.cone_of(d))? {
                    continue 'outer;
                }
            }
            return Ok(false);
        }
        Ok(true)
    }

    /// Star subdivision at the primitive vector `r`: every cone containing `r`
    /// is replaced by the cones spanned by `r` and its faces not containing `r`.
    /// If `r` is already a ray of the fan the fan is returned unchanged.
    pub fn star_subdivision(&self, r: &LatticeVector) -> Result<Fan, Error> {
        if r.dim() != self.rank {
            return Err(Error::Dimension(format!(
                "ray of length {} in rank {}",
                r.dim(),
                self.rank
            )));
        }
        if !r.is_primitive() {
            return Err(Error::Invalid(format!("{r:?} is not primitive")));
        }
        if self.ray_index(r).is_some() {
            return Ok(self.clone());
        }
        if !self.support_contains(r)? {
            return Err(Error::OutsideSupport(format!("{r:?}")));
        }
        let mut out: Vec<Vec<LatticeVector>> = Vec::new();
        for c in &self.cones {
            let cone = self.cone_of(c);
            if !cone.contains(r)? {
                out.push(cone.rays().to_vec());
                continue;
            }
            for n in cone.facet_normals() {
                if n.dot(r).is_zero() {
                    continue;
                }
                let mut gens: Vec<LatticeVector> = cone
                    .rays()
                    .iter()
                    .filter(|v| n.dot(v).is_zero())
                    .cloned()
                    .collect();
                gens.push(r.clone());
                out.push(gens);
            }
        }
        Fan::from_cones(self.rank, &out)
    }

    /// The star of a cone `τ` (given by ray indices) projected to `N/span(τ)`.
    /// Returns the star fan and the projection matrix `N → N(τ)`.
    pub fn star(&self, tau: &[usize]) -> Result<(Fan, IntMatrix), Error> {
        let tau_vectors = self.vectors_of(tau);
        let projection = quotient_projection(&tau_vectors, self.rank);
        let qrank = projection.rows();
        let mut cones = Vec::new();
        for c in &self.cones {
            if !tau.iter().all(|i| c.contains(i)) {
                continue;
            }
            let mut gens = Vec::new();
            for &i in c {
                if tau.contains(&i) {
                    continue;
                }
                gens.push(projection.apply(&self.rays[i])?.primitive());
            }
            cones.push(gens);
        }
        if cones.is_empty() {
            return Err(Error::Invalid(format!("{tau:?} is not a cone of the fan")));
        }
        Ok((Fan::from_cones(qrank, &cones)?, projection))
    }

    /// Maps every ray through a lattice isomorphism.
    pub fn transform(&self, map: &IntMatrix) -> Result<Fan, Error> {
        let mut cones = Vec::new();
        for c in &self.cones {
            cones.push(
                c.iter()
                    .map(|&i| map.apply(&self.rays[i]))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Fan::from_cones(map.rows(), &cones)
    }
}

/// The projection `Zⁿ → Zⁿ / (span(vectors) ∩ Zⁿ)`, whose rows are a basis of the
/// annihilator lattice. With no vectors this is the identity.
pub fn quotient_projection(vectors: &[LatticeVector], rank: usize) -> IntMatrix {
    if vectors.is_empty() {
        return IntMatrix::identity(rank);
    }
    let m = IntMatrix::from_vectors(vectors, rank);
    let kernel = integer_kernel(&m);
    IntMatrix::from_vectors(&kernel, rank)
}

/// The fan of `ℙⁿ`: rays `e₁, …, eₙ, −Σeᵢ`, maximal cones all `n`-subsets.
pub fn projective_space_fan(n: usize) -> Fan {
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    rays.push(LatticeVector(vec![-BigInt::one(); n]));
    let cones: Vec<Vec<LatticeVector>> = (0..=n)
        .map(|skip| {
            rays.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, r)| r.clone())
                .collect()
        })
        .collect();
    Fan::from_extremal_cones(n, cones)
}

/// Product fan in `N₁ ⊕ N₂`.
pub fn product_fan(a: &Fan, b: &Fan) -> Fan {
    let rank = a.rank + b.rank;
    let lift_a = |r: &LatticeVector| {
        let mut v = r.0.clone();
        v.extend(std::iter::repeat_n(BigInt::zero(), b.rank));
        LatticeVector(v)
    };
    let lift_b = |r: &LatticeVector| {
        let mut v = vec![BigInt::zero(); a.rank];
        v.extend(r.0.iter().cloned());
        LatticeVector(v)
    };
    let mut cones = Vec::new();
    for ca in &a.cones {
        for cb in &b.cones {
            let mut gens: Vec<LatticeVector> = ca.iter().map(|&i| lift_a(&a.rays[i])).collect();
            gens.extend(cb.iter().map(|&i| lift_b(&b.rays[i])));
            cones.push(gens);
        }
    }
    Fan::from_extremal_cones(rank, cones)
}

/// Coordinate projections `N₁ ⊕ N₂ → N₁` and `N₁ ⊕ N₂ → N₂`.
pub fn product_projections(rank_a: usize, rank_b: usize) -> (IntMatrix, IntMatrix) {
    let mut pa = IntMatrix::zeros(rank_a, rank_a + rank_b);
    for i in 0..rank_a {
        pa[(i, i)] = BigInt::one();
    }
    let mut pb = IntMatrix::zeros(rank_b, rank_a + rank_b);
    for i in 0..rank_b {
        pb[(i, rank_a + i)] = BigInt::one();
    }
    (pa, pb)
}

/// Evidence that a lattice map exhibits `source` as a split fibration over `base`.
#[derive(Debug, Clone)]
pub struct Fibration {
    /// Cones of the source lying in the kernel, as a fan in kernel coordinates.
    pub fiber: Fan,
    /// Kernel lattice basis used for `fiber`'s coordinates.
    pub kernel_basis: Vec<LatticeVector>,
}

/// Checks that `map` is a surjective lattice map sending every maximal cone of
/// `source` onto a maximal cone of `base`, with the source cones being exactly
/// the products (fiber cone) + (lift of a base cone), one for each pair.
pub fn check_fibration(source: &Fan, base: &Fan, map: &IntMatrix) -> Result<Fibration, String> {
    if map.cols() != source.rank || map.rows() != base.rank {
        return Err(format!(
            "map is {}x{}, fans have ranks {} and {}",
            map.rows(),
            map.cols(),
            source.rank,
            base.rank
        ));
    }
    if !invariant_factors(map)
        .iter()
        .take(base.rank)
        .all(One::is_one)
        || map.rank() != base.rank
    {
        return Err("lattice map is not surjective".into());
    }
    let kernel_basis = integer_kernel(map);
    let images: Vec<LatticeVector> = source
        .rays
        .iter()
        .map(|r| map.apply(r).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let mut fiber_cones: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut pairs: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for c in &source.cones {
        let (vertical, horizontal): (Vec<usize>, Vec<usize>) =
            c.iter().partition(|&&i| images[i].is_zero());
        let mut base_idx = Vec::new();
        for &i in &horizontal {
            match base.ray_index(&images[i]) {
                Some(b) => base_idx.push(b),
                None => {
                    return Err(format!(
                        "ray {:?} maps to {:?}, which is not a ray of the base",
                        source.rays[i], images[i]
                    ))
                }
            }
        }
        base_idx.sort_unstable();
        let distinct = base_idx.windows(2).all(|w| w[0] != w[1]);
        if !distinct || !base.cones.contains(&base_idx) {
            return Err(format!(
                "cone {c:?} does not map onto a maximal cone of the base"
            ));
        }
        fiber_cones.insert(vertical.clone());
        if !pairs.insert((vertical, base_idx)) {
            return Err(format!("cone {c:?} repeats a (fiber, base) pair"));
        }
    }
    if pairs.len() != fiber_cones.len() * base.cones.len() {
        return Err(format!(
            "{} source cones, expected {} fiber cones x {} base cones",
            pairs.len(),
            fiber_cones.len(),
            base.cones.len()
        ));
    }
    let mut cones = Vec::new();
    for fc in &fiber_cones {
        let mut gens = Vec::new();
        for &i in fc {
            let coords = crate::exact::integer_coordinates(&kernel_basis, &source.rays[i])
                .ok_or_else(|| "vertical ray outside kernel lattice".to_string())?;
            gens.push(LatticeVector(coords));
        }
        cones.push(gens);
    }
    let fiber = Fan::from_cones(kernel_basis.len(), &cones).map_err(|e| e.to_string())?;
    if fiber.cones.len() != fiber_cones.len() {
        return Err("fiber cones are not distinct".into());
    }
    Ok(Fibration {
        fiber,
        kernel_basis,
    })
}

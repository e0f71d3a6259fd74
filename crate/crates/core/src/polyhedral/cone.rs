use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use super::dd::generators_of;
use crate::exact::{invariant_factors, rank_of_vectors, IntMatrix, LatticeVector};
use crate::Error;

/// Inequality description: `⟨n, v⟩ ≥ 0` for every facet normal, `⟨e, v⟩ = 0` for every equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub facets: Vec<LatticeVector>,
    pub equations: Vec<LatticeVector>,
}

/// A rational polyhedral cone in `ℚ^rank`.
///
/// Rays are primitive, extremal and sorted lexicographically. A non-pointed
/// cone additionally carries a lattice basis of its lineality space; such
/// cones only arise as duals.
#[derive(Debug, Clone)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    lineality: Vec<LatticeVector>,
    hrep: OnceLock<HRep>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.lineality == other.lineality
    }
}

impl Eq for Cone {}

impl Cone {
    /// The cone generated by arbitrary vectors; redundant generators are removed.
    pub fn new(rank: usize, generators: &[LatticeVector]) -> Result<Self, Error> {
        check_dims(rank, generators)?;
        let dual = generators_of(rank, generators);
        let hrep = HRep {
            facets: dual.rays,
            equations: dual.lineality,
        };
        let mut constraints = hrep.facets.clone();
        for e in &hrep.equations {
            constraints.push(e.clone());
            constraints.push(-e);
        }
        let primal = generators_of(rank, &constraints);
        let cone = Self {
            rank,
            rays: primal.rays,
            lineality: primal.lineality,
            hrep: OnceLock::new(),
        };
        let _ = cone.hrep.set(hrep);
        Ok(cone)
    }

    /// The cone `{v : ⟨aᵢ, v⟩ ≥ 0}` for the given inequality normals.
    pub fn from_inequalities(rank: usize, normals: &[LatticeVector]) -> Result<Self, Error> {
        check_dims(rank, normals)?;
        let g = generators_of(rank, normals);
        Ok(Self {
            rank,
            rays: g.rays,
            lineality: g.lineality,
            hrep: OnceLock::new(),
        })
    }

    /// Trusted constructor for rays already known to be primitive and extremal.
    pub(crate) fn from_extremal_rays(rank: usize, mut rays: Vec<LatticeVector>) -> Self {
        rays.sort();
        rays.dedup();
        Self {
            rank,
            rays,
            lineality: Vec::new(),
            hrep: OnceLock::new(),
        }
    }

    pub fn orthant(rank: usize) -> Self {
        Self::from_extremal_rays(
            rank,
            (0..rank).map(|i| LatticeVector::unit(rank, i)).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    /// Rays followed by `±` lineality generators, sorted.
    pub fn generators(&self) -> Vec<LatticeVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(-l);
        }
        g.sort();
        g
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| {
            let g = generators_of(self.rank, &self.generators());
            HRep {
                facets: g.rays,
                equations: g.lineality,
            }
        })
    }

    pub fn facet_normals(&self) -> &[LatticeVector] {
        &self.hrep().facets
    }

    pub fn dim(&self) -> usize {
        self.rank - self.hrep().equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.hrep().equations.is_empty()
    }

    pub fn contains(&self, v: &LatticeVector) -> Result<bool, Error> {
        if v.dim() != self.rank {
            return Err(Error::Dimension(format!(
                "vector of length {} tested against cone of rank {}",
                v.dim(),
                self.rank
            )));
        }
        let h = self.hrep();
        Ok(h.equations.iter().all(|e| e.dot(v).is_zero())
            && h.facets.iter().all(|n| !n.dot(v).is_negative()))
    }

    /// True if `v` lies in the relative interior.
    pub fn contains_in_relative_interior(&self, v: &LatticeVector) -> Result<bool, Error> {
        Ok(self.contains(v)? && self.hrep().facets.iter().all(|n| n.dot(v).is_positive()))
    }

    pub fn is_simplicial(&self) -> Result<bool, Error> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(self.rays.len() == self.dim())
    }

    /// Simplicial with rays extending to a lattice basis.
    pub fn is_smooth(&self) -> Result<bool, Error> {
        if !self.is_simplicial()? {
            return Ok(false);
        }
        if self.rays.is_empty() {
            return Ok(true);
        }
        let m = IntMatrix::from_vectors(&self.rays, self.rank);
        Ok(invariant_factors(&m).iter().all(One::is_one))
    }

    /// Facets as sets of ray indices.
    pub fn facet_ray_sets(&self) -> Vec<Vec<usize>> {
        self.hrep()
            .facets
            .iter()
            .map(|n| {
                (0..self.rays.len())
                    .filter(|&i| n.dot(&self.rays[i]).is_zero())
                    .collect()
            })
            .collect()
    }

    /// All faces of a pointed cone as sorted ray-index sets, including the
    /// apex (empty set) and the cone itself.
    pub fn face_ray_sets(&self) -> BTreeSet<Vec<usize>> {
        let full: Vec<usize> = (0..self.rays.len()).collect();
        let facets = self.facet_ray_sets();
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        faces.insert(full.clone());
        let mut frontier = vec![full];
        while let Some(face) = frontier.pop() {
            for f in &facets {
                let meet: Vec<usize> = face.iter().copied().filter(|i| f.contains(i)).collect();
                if faces.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        faces
    }

    /// Dimension of the face spanned by the given rays.
    pub fn face_dim(&self, rays: &[usize]) -> usize {
        let vs: Vec<&LatticeVector> = rays.iter().map(|&i| &self.rays[i]).collect();
        rank_of_vectors(&vs, self.rank)
    }

    /// The smallest face containing all given vectors (which must lie in the cone), as ray indices.
    pub fn minimal_face_containing(&self, vectors: &[LatticeVector]) -> Vec<usize> {
        let mut face: Vec<usize> = (0..self.rays.len()).collect();
        for n in &self.hrep().facets {
            if vectors.iter().all(|v| n.dot(v).is_zero()) {
                face.retain(|&i| n.dot(&self.rays[i]).is_zero());
            }
        }
        face
    }

    pub fn sub_cone(&self, ray_indices: &[usize]) -> Cone {
        Cone::from_extremal_rays(
            self.rank,
            ray_indices.iter().map(|&i| self.rays[i].clone()).collect(),
        )
    }
}

fn check_dims(rank: usize, vs: &[LatticeVector]) -> Result<(), Error> {
    match vs.iter().find(|v| v.dim() != rank) {
        Some(v) => Err(Error::Dimension(format!("vector {v:?} in rank {rank}"))),
        None => Ok(()),
    }
}

/// The dual cone `{u : ⟨u, v⟩ ≥ 0 for all v ∈ C}`.
pub fn dual_cone(c: &Cone) -> Cone {
    let h = c.hrep();
    let dual = Cone {
        rank: c.rank,
        rays: h.facets.clone(),
        lineality: h.equations.clone(),
        hrep: OnceLock::new(),
    };
    let _ = dual.hrep.set(HRep {
        facets: c.rays.clone(),
        equations: c.lineality.clone(),
    });
    dual
}

pub fn cone_contains(c: &Cone, v: &LatticeVector) -> Result<bool, Error> {
    c.contains(v)
}

/// Whether `cone(inner) ⊆ outer`.
pub fn cone_is_subset(inner: &[LatticeVector], outer: &Cone) -> Result<bool, Error> {
    for v in inner {
        if !outer.contains(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

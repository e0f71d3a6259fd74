//! One-parameter diagonal actions on affine space and their toric quotients.
//!
//! Points of `V^∨ = V₋^∨ ⊕ V₊^∨` are scaled as `t·v = (t v₋, t⁻¹ v₊)`. The
//! first `m+1` coordinates (`y`) form the `V₋^∨` block with point-weight `+1`,
//! the last `l+1` coordinates (`x`) the `V₊^∨` block with point-weight `−1`.
//!
//! The quotient lattice `N' = Zᴺ / Z·w` is presented through the projection
//! `π` whose rows are the HNF-canonical basis of the invariant characters
//! `w^⊥ ⊂ Zᴺ`. The invariant monoid lives in `{c : ⟨π(eᵢ), c⟩ ≥ 0}`, and the
//! fans of `B±/ℂ*` and of the blow-up live in its dual, `cone(π(eᵢ))`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{integer_kernel, IntMatrix, LatticeVector};
use crate::polyhedral::{hilbert_basis, Cone, Fan};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAction {
    n_minus: usize,
    n_plus: usize,
    point_weights: Vec<i64>,
}

impl WeightedAction {
    pub fn new(n_minus: usize, n_plus: usize, point_weights: Vec<i64>) -> Result<Self, Error> {
        if point_weights.len() != n_minus + n_plus {
            return Err(Error::Dimension(format!(
                "{} weights for {} + {} coordinates",
                point_weights.len(),
                n_minus,
                n_plus
            )));
        }
        Ok(Self {
            n_minus,
            n_plus,
            point_weights,
        })
    }

    /// The action `t·v = (t v₋, t⁻¹ v₊)` on `ℂ^{m+1} ⊕ ℂ^{l+1}`.
    pub fn cobordism(m: usize, l: usize) -> Self {
        let mut w = vec![1; m + 1];
        w.extend(std::iter::repeat_n(-1, l + 1));
        Self {
            n_minus: m + 1,
            n_plus: l + 1,
            point_weights: w,
        }
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn coordinate_count(&self) -> usize {
        self.n_minus + self.n_plus
    }

    pub fn point_weights(&self) -> &[i64] {
        &self.point_weights
    }

    pub fn is_cobordism(&self) -> bool {
        self.n_minus >= 1
            && self.n_plus >= 1
            && self.point_weights[..self.n_minus].iter().all(|&w| w == 1)
            && self.point_weights[self.n_minus..].iter().all(|&w| w == -1)
    }

    fn weight_vector(&self) -> LatticeVector {
        LatticeVector::from_i64(&self.point_weights)
    }

    fn check_point(&self, v: &[BigRational]) -> Result<(), Error> {
        if v.len() != self.coordinate_count() {
            return Err(Error::Dimension(format!(
                "point with {} coordinates for an action on {} coordinates",
                v.len(),
                self.coordinate_count()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitDirection {
    TowardZero,
    TowardInfinity,
}

/// Whether `lim t·v` exists as `t → 0` or `t → ∞`.
pub fn limit_exists(
    a: &WeightedAction,
    v: &[BigRational],
    direction: LimitDirection,
) -> Result<bool, Error> {
    a.check_point(v)?;
    Ok(v.iter().zip(&a.point_weights).all(|(x, &w)| {
        let obstructs = match direction {
            LimitDirection::TowardZero => w < 0,
            LimitDirection::TowardInfinity => w > 0,
        };
        !obstructs || x.is_zero()
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub in_b_minus: bool,
    pub in_b_plus: bool,
}

/// `B₋` is the set where `lim_{t→∞}` fails to exist, `B₊` where `lim_{t→0}` does.
pub fn cobordism_membership(a: &WeightedAction, v: &[BigRational]) -> Result<Membership, Error> {
    Ok(Membership {
        in_b_minus: !limit_exists(a, v, LimitDirection::TowardInfinity)?,
        in_b_plus: !limit_exists(a, v, LimitDirection::TowardZero)?,
    })
}

/// The GIT quotient `V^∨ ⫽ ℂ*` as an affine toric variety.
#[derive(Debug, Clone)]
pub struct GitQuotient {
    /// Rows form a basis of the invariant characters; column `i` is `π(eᵢ)`.
    pub projection: IntMatrix,
    /// The invariant cone in the coordinates of that basis.
    pub cone: Cone,
    /// Hilbert basis of the invariant monoid, in the same coordinates.
    pub hilbert_basis: Vec<LatticeVector>,
    /// The same elements as exponent vectors of monomials on `V^∨`.
    pub monomials: Vec<LatticeVector>,
}

pub fn git_quotient_cone(a: &WeightedAction) -> Result<GitQuotient, Error> {
    let has_pos = a.point_weights.iter().any(|&w| w > 0);
    let has_neg = a.point_weights.iter().any(|&w| w < 0);
    if !has_pos || !has_neg {
        return Err(Error::Invalid(
            "weights of a single sign: the quotient is a point".into(),
        ));
    }
    let n = a.coordinate_count();
    let w = IntMatrix::from_vectors(&[a.weight_vector()], n);
    let basis = integer_kernel(&w);
    let projection = IntMatrix::from_vectors(&basis, n);
    let normals: Vec<LatticeVector> = (0..n)
        .map(|i| LatticeVector(projection.column(i)))
        .collect();
    let cone = Cone::from_inequalities(basis.len(), &normals)?;
    let hilbert = hilbert_basis(&cone)?;
    let transpose = projection.transpose();
    let mut monomials = hilbert
        .iter()
        .map(|h| transpose.apply(h))
        .collect::<Result<Vec<_>, _>>()?;
    monomials.sort();
    Ok(GitQuotient {
        projection,
        cone,
        hilbert_basis: hilbert,
        monomials,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// Everything attached to a cobordism action: the GIT cone, the two
/// geometric quotients and the common blow-up.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub action: WeightedAction,
    pub invariant_cone: Cone,
    pub hilbert_basis: Vec<LatticeVector>,
    pub projection: IntMatrix,
    /// `cone(π(e₁), …, π(e_N))`, the common support of all quotient fans.
    pub git_cone: Cone,
    pub quotient_lattice_rank: usize,
    pub fan_minus: Fan,
    pub fan_plus: Fan,
    pub blowup_ray: LatticeVector,
    pub blowup_fan: Fan,
}

impl QuotientData {
    pub fn new(action: &WeightedAction) -> Result<Self, Error> {
        let git = git_quotient_cone(action)?;
        let rank = git.projection.rows();
        let images = coordinate_images(&git.projection);
        let git_cone = Cone::new(rank, &images)?;
        let fan_minus = fan_from_images(action, &images, Side::Minus)?;
        let fan_plus = fan_from_images(action, &images, Side::Plus)?;
        let blowup_ray = sum_of(&images[..action.n_minus], rank);
        let mut q = Self {
            action: action.clone(),
            invariant_cone: git.cone,
            hilbert_basis: git.hilbert_basis,
            projection: git.projection,
            git_cone,
            quotient_lattice_rank: rank,
            fan_minus,
            fan_plus,
            blowup_ray,
            blowup_fan: Fan::from_cones(rank, &[])?,
        };
        q.blowup_fan = blowup_fan(&q)?;
        Ok(q)
    }

    /// `π(eᵢ)` for the `V₋^∨` block.
    pub fn y_images(&self) -> Vec<LatticeVector> {
        coordinate_images(&self.projection)[..self.action.n_minus].to_vec()
    }

    /// `π(eᵢ)` for the `V₊^∨` block.
    pub fn x_images(&self) -> Vec<LatticeVector> {
        coordinate_images(&self.projection)[self.action.n_minus..].to_vec()
    }

    pub fn git_fan(&self) -> Fan {
        Fan::from_cone(&self.git_cone)
    }
}

fn coordinate_images(projection: &IntMatrix) -> Vec<LatticeVector> {
    (0..projection.cols())
        .map(|i| LatticeVector(projection.column(i)))
        .collect()
}

fn sum_of(vs: &[LatticeVector], rank: usize) -> LatticeVector {
    vs.iter().fold(LatticeVector::zero(rank), |acc, v| &acc + v)
}

/// The fan of `B±/ℂ*`: the cones `π(cone(eᵢ : i ≠ j))` where `j` runs over the
/// block whose vanishing is the unstable locus (`y` for `B₋`, `x` for `B₊`).
pub fn quotient_fan(a: &WeightedAction, side: Side) -> Result<Fan, Error> {
    let git = git_quotient_cone(a)?;
    fan_from_images(a, &coordinate_images(&git.projection), side)
}

fn fan_from_images(a: &WeightedAction, images: &[LatticeVector], side: Side) -> Result<Fan, Error> {
    if !a.is_cobordism() {
        return Err(Error::Unsupported(
            "quotient fans need weights +1 on V₋^∨ and −1 on V₊^∨".into(),
        ));
    }
    let rank = images[0].dim();
    let block: Vec<usize> = match side {
        Side::Minus => (0..a.n_minus).collect(),
        Side::Plus => (a.n_minus..a.coordinate_count()).collect(),
    };
    let cones: Vec<Vec<LatticeVector>> = block
        .iter()
        .map(|&omit| {
            images
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != omit)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect();
    Fan::from_cones(rank, &cones)
}

/// The blow-up of the vertex: the star subdivision of the `B₋` fan at
/// `ρ = Σ π(yᵢ) = Σ π(xⱼ)`, checked to coincide with the subdivision of the
/// `B₊` fan at the same ray.
pub fn blowup_fan(q: &QuotientData) -> Result<Fan, Error> {
    if !q.git_cone.is_pointed() || !q.git_cone.is_full_dimensional() {
        return Err(Error::Invalid(
            "git cone is not full-dimensional and pointed".into(),
        ));
    }
    let rho = &q.blowup_ray;
    if !q.git_cone.contains_in_relative_interior(rho)? {
        return Err(Error::Invalid(format!(
            "{rho:?} is not interior to the git cone"
        )));
    }
    let from_minus = q.fan_minus.star_subdivision(rho)?;
    let from_plus = q.fan_plus.star_subdivision(rho)?;
    if from_minus != from_plus {
        return Err(Error::Invalid(
            "subdivisions of the two quotient fans disagree".into(),
        ));
    }
    Ok(from_minus)
}

/// A lattice map with source and target fans, together with a target maximal
/// cone for every source maximal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanMorphism {
    lattice_map: IntMatrix,
    source: Fan,
    target: Fan,
    cone_assignment: Vec<usize>,
}

impl FanMorphism {
    /// Finds, for every maximal cone of `source`, a maximal cone of `target`
    /// containing its image.
    pub fn certify(lattice_map: IntMatrix, source: Fan, target: Fan) -> Result<Self, Error> {
        if lattice_map.cols() != source.rank() || lattice_map.rows() != target.rank() {
            return Err(Error::Dimension(format!(
                "map is {}x{} between ranks {} and {}",
                lattice_map.rows(),
                lattice_map.cols(),
                source.rank(),
                target.rank()
            )));
        }
        let targets: Vec<Cone> = (0..target.maximal_cones().len())
            .map(|i| target.cone(i))
            .collect();
        let mut cone_assignment = Vec::with_capacity(source.maximal_cones().len());
        for c in source.maximal_cones() {
            let images = source
                .vectors_of(c)
                .iter()
                .map(|r| lattice_map.apply(r))
                .collect::<Result<Vec<_>, _>>()?;
            let found = targets
                .iter()
                .position(|t| images.iter().all(|v| t.contains(v).unwrap_or(false)));
            match found {
                Some(t) => cone_assignment.push(t),
                None => {
                    return Err(Error::Morphism(format!(
                        "image of cone {:?} lies in no cone of the target",
                        source.vectors_of(c)
                    )))
                }
            }
        }
        Ok(Self {
            lattice_map,
            source,
            target,
            cone_assignment,
        })
    }

    pub fn identity(fan: &Fan) -> Self {
        Self::certify(IntMatrix::identity(fan.rank()), fan.clone(), fan.clone())
            .expect("identity is a fan morphism")
    }

    pub fn lattice_map(&self) -> &IntMatrix {
        &self.lattice_map
    }

    pub fn source(&self) -> &Fan {
        &self.source
    }

    pub fn target(&self) -> &Fan {
        &self.target
    }

    pub fn cone_assignment(&self) -> &[usize] {
        &self.cone_assignment
    }

    /// Re-checks every recorded assignment.
    pub fn is_certified(&self) -> bool {
        self.source.maximal_cones().len() == self.cone_assignment.len()
            && self
                .source
                .maximal_cones()
                .iter()
                .zip(&self.cone_assignment)
                .all(|(c, &t)| {
                    let target = self.target.cone(t);
                    self.source.vectors_of(c).iter().all(|r| {
                        self.lattice_map
                            .apply(r)
                            .is_ok_and(|v| target.contains(&v).unwrap_or(false))
                    })
                })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FanMorphism) -> Result<FanMorphism, Error> {
        if first.target != self.source {
            return Err(Error::Morphism(
                "target of the first map is not the source of the second".into(),
            ));
        }
        let map = self.lattice_map.mul(&first.lattice_map)?;
        FanMorphism::certify(map, first.source.clone(), self.target.clone())
    }
}

/// The five maps of the square `W → B±/ℂ* → V^∨ ⫽ ℂ*`.
#[derive(Debug, Clone)]
pub struct Morphisms {
    pub b_minus: FanMorphism,
    pub b_plus: FanMorphism,
    pub s_minus: FanMorphism,
    pub s_plus: FanMorphism,
    pub beta: FanMorphism,
}

pub fn build_morphisms(q: &QuotientData) -> Result<Morphisms, Error> {
    let id = IntMatrix::identity(q.quotient_lattice_rank);
    let git = q.git_fan();
    let b_minus = FanMorphism::certify(id.clone(), q.blowup_fan.clone(), q.fan_minus.clone())?;
    let b_plus = FanMorphism::certify(id.clone(), q.blowup_fan.clone(), q.fan_plus.clone())?;
    let s_minus = FanMorphism::certify(id.clone(), q.fan_minus.clone(), git.clone())?;
    let s_plus = FanMorphism::certify(id.clone(), q.fan_plus.clone(), git.clone())?;
    let beta = FanMorphism::certify(id, q.blowup_fan.clone(), git)?;
    for (s, b, name) in [(&s_minus, &b_minus, "s₋∘b₋"), (&s_plus, &b_plus, "s₊∘b₊")] {
        check_factorization(s, b, &beta)
            .map_err(|e| Error::Morphism(format!("{name} ≠ β: {e}")))?;
    }
    Ok(Morphisms {
        b_minus,
        b_plus,
        s_minus,
        s_plus,
        beta,
    })
}

/// Checks `s ∘ b = β` as maps of fans: matching fans, equal lattice maps, and
/// on every maximal cone of the source the two images coincide and lie in the
/// cone of the target assigned by `β`.
pub fn check_factorization(
    s: &FanMorphism,
    b: &FanMorphism,
    beta: &FanMorphism,
) -> Result<(), String> {
    if b.target != s.source {
        return Err("target of b is not the source of s".into());
    }
    if b.source != beta.source || s.target != beta.target {
        return Err("source or target differs from that of β".into());
    }
    let composite = s
        .lattice_map
        .mul(&b.lattice_map)
        .map_err(|e| e.to_string())?;
    for (i, c) in b.source.maximal_cones().iter().enumerate() {
        let target = beta.target.cone(beta.cone_assignment[i]);
        let via: Vec<LatticeVector> = image_set(&composite, &b.source.vectors_of(c))?;
        let direct: Vec<LatticeVector> = image_set(&beta.lattice_map, &b.source.vectors_of(c))?;
        if via != direct {
            return Err(format!(
                "images of cone {:?} differ",
                b.source.vectors_of(c)
            ));
        }
        if !via.iter().all(|v| target.contains(v).unwrap_or(false)) {
            return Err(format!(
                "image of cone {:?} leaves its β-cone",
                b.source.vectors_of(c)
            ));
        }
    }
    Ok(())
}

fn image_set(m: &IntMatrix, vs: &[LatticeVector]) -> Result<Vec<LatticeVector>, String> {
    let set: BTreeSet<LatticeVector> = vs
        .iter()
        .map(|v| m.apply(v).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    Ok(set.into_iter().collect())
}

/// Exceptional locus of a birational toric morphism, described by orbit cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalLocus {
    /// Minimal exceptional cones of the source, as ray-index sets.
    pub minimal_cones: Vec<Vec<usize>>,
    /// Dimension of each minimal cone (= codimension of its orbit closure).
    pub dimensions: Vec<usize>,
    /// Smallest codimension of an exceptional orbit closure, if any.
    pub codimension: Option<usize>,
}

impl ExceptionalLocus {
    pub fn is_empty(&self) -> bool {
        self.minimal_cones.is_empty()
    }
}

/// A cone `τ` of the source is exceptional when the smallest cone of the
/// target containing its image is not the image of a cone of the source.
/// The exceptional locus is the union of the orbit closures of the minimal
/// exceptional cones.
pub fn exceptional_locus(f: &FanMorphism) -> Result<ExceptionalLocus, Error> {
    let m = &f.lattice_map;
    if m.rows() != m.cols() || !m.is_unimodular() {
        return Err(Error::Morphism(
            "exceptional loci need a lattice isomorphism".into(),
        ));
    }
    let inverse = crate::exact::right_inverse(m)
        .ok_or_else(|| Error::Morphism("map not invertible".into()))?;
    let source = &f.source;
    let source_cones: Vec<Cone> = (0..source.maximal_cones().len())
        .map(|i| source.cone(i))
        .collect();
    let target_cones: Vec<Cone> = (0..f.target.maximal_cones().len())
        .map(|i| f.target.cone(i))
        .collect();

    let is_exceptional = |tau: &[usize], owner: usize| -> Result<bool, Error> {
        let images = source
            .vectors_of(tau)
            .iter()
            .map(|r| m.apply(r))
            .collect::<Result<Vec<_>, _>>()?;
        let target = &target_cones[f.cone_assignment[owner]];
        let face = target.minimal_face_containing(&images);
        let mut back = Vec::with_capacity(face.len());
        for &i in &face {
            match source.ray_index(&inverse.apply(&target.rays()[i])?.primitive()) {
                Some(k) => back.push(k),
                None => return Ok(true),
            }
        }
        Ok(!source.has_cone(&back))
    };

    // breadth-first over non-exceptional cones, by dimension
    let mut queue: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    queue.entry(0).or_default().insert(Vec::new());
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut minimal: Vec<(usize, Vec<usize>)> = Vec::new();
    while let Some((dim, layer)) = queue.pop_first() {
        for tau in layer {
            if !seen.insert(tau.clone()) {
                continue;
            }
            if minimal
                .iter()
                .any(|(_, e)| e.iter().all(|i| tau.contains(i)))
            {
                continue;
            }
            let owner = source
                .maximal_cones()
                .iter()
                .position(|c| tau.iter().all(|i| c.contains(i)))
                .ok_or_else(|| Error::Invalid(format!("{tau:?} is not a cone of the source")))?;
            if is_exceptional(&tau, owner)? {
                minimal.push((dim, tau));
                continue;
            }
            for (k, c) in source.maximal_cones().iter().enumerate() {
                if !tau.iter().all(|i| c.contains(i)) {
                    continue;
                }
                let local = source.vectors_of(&tau);
                for &r in c {
                    if tau.contains(&r) {
                        continue;
                    }
                    let mut gens = local.clone();
                    gens.push(source.rays()[r].clone());
                    let cone = &source_cones[k];
                    let local_face = cone.minimal_face_containing(&gens);
                    let d = cone.face_dim(&local_face);
                    let mut face: Vec<usize> = local_face
                        .iter()
                        .map(|&i| source.ray_index(&cone.rays()[i]).expect("ray of the fan"))
                        .collect();
                    face.sort_unstable();
                    if !seen.contains(&face) {
                        queue.entry(d).or_default().insert(face);
                    }
                }
            }
        }
    }
    minimal.sort();
    Ok(ExceptionalLocus {
        codimension: minimal.iter().map(|(d, _)| *d).min(),
        dimensions: minimal.iter().map(|(d, _)| *d).collect(),
        minimal_cones: minimal.into_iter().map(|(_, c)| c).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::{find_isomorphism, product_fan, projective_space_fan};

    fn q(c: &[i64]) -> Vec<BigRational> {
        c.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn limits_for_the_conifold_action() {
        let a = WeightedAction::cobordism(1, 1);
        let v = q(&[1, 0, 0, 0]);
        assert!(!limit_exists(&a, &v, LimitDirection::TowardInfinity).unwrap());
        assert!(limit_exists(&a, &v, LimitDirection::TowardZero).unwrap());
        let o = q(&[0, 0, 0, 0]);
        assert!(limit_exists(&a, &o, LimitDirection::TowardZero).unwrap());
        assert!(limit_exists(&a, &o, LimitDirection::TowardInfinity).unwrap());
        assert!(limit_exists(&a, &q(&[1, 0]), LimitDirection::TowardZero).is_err());
    }

    #[test]
    fn membership() {
        let a = WeightedAction::cobordism(1, 1);
        let both = cobordism_membership(&a, &q(&[1, 1, 1, 1])).unwrap();
        assert!(both.in_b_minus && both.in_b_plus);
        let minus = cobordism_membership(&a, &q(&[1, 1, 0, 0])).unwrap();
        assert!(minus.in_b_minus && !minus.in_b_plus);
        let none = cobordism_membership(&a, &q(&[0, 0, 0, 0])).unwrap();
        assert!(!none.in_b_minus && !none.in_b_plus);
    }

    #[test]
    fn conifold_git_cone() {
        let g = git_quotient_cone(&WeightedAction::cobordism(1, 1)).unwrap();
        assert_eq!(g.cone.rank(), 3);
        assert_eq!(g.cone.rays().len(), 4);
        assert!(!g.cone.is_simplicial().unwrap());
        assert_eq!(g.hilbert_basis.len(), 4);
        let expected: Vec<LatticeVector> = [[0, 1, 0, 1], [0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 1, 0]]
            .iter()
            .map(|c| LatticeVector::from_i64(c))
            .collect();
        assert_eq!(g.monomials, expected);
    }

    #[test]
    fn degenerate_git_cones() {
        let a = WeightedAction::cobordism(2, 0);
        let g = git_quotient_cone(&a).unwrap();
        assert_eq!(g.monomials.len(), 3);
        assert!(g.cone.is_smooth().unwrap());
        let line = git_quotient_cone(&WeightedAction::cobordism(0, 0)).unwrap();
        assert_eq!(line.monomials, vec![LatticeVector::from_i64(&[1, 1])]);
        let same_sign = WeightedAction::new(2, 0, vec![1, 1]).unwrap();
        assert!(git_quotient_cone(&same_sign).is_err());
    }

    #[test]
    fn conifold_quotient_fans() {
        let a = WeightedAction::cobordism(1, 1);
        let minus = quotient_fan(&a, Side::Minus).unwrap();
        let plus = quotient_fan(&a, Side::Plus).unwrap();
        assert_eq!(minus.maximal_cones().len(), 2);
        assert_eq!(plus.maximal_cones().len(), 2);
        assert!(minus.is_smooth() && plus.is_smooth());
        assert_ne!(minus, plus);
        let one_side = quotient_fan(&WeightedAction::cobordism(1, 0), Side::Plus).unwrap();
        assert_eq!(one_side.maximal_cones().len(), 1);
        assert!(one_side.is_smooth());
        let general = WeightedAction::new(2, 2, vec![1, 2, -1, -1]).unwrap();
        assert!(matches!(
            quotient_fan(&general, Side::Minus),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn blowup_of_the_conifold() {
        let data = QuotientData::new(&WeightedAction::cobordism(1, 1)).unwrap();
        assert_eq!(data.blowup_fan.maximal_cones().len(), 4);
        assert!(data.blowup_fan.is_smooth());
        assert_eq!(
            data.blowup_fan,
            data.git_fan().star_subdivision(&data.blowup_ray).unwrap()
        );
        let rho = data.blowup_fan.ray_index(&data.blowup_ray).unwrap();
        let (star, _) = data.blowup_fan.star(&[rho]).unwrap();
        let model = product_fan(&projective_space_fan(1), &projective_space_fan(1));
        assert!(find_isomorphism(&star, &model, None).is_some());
    }

    #[test]
    fn blowup_star_for_m2_l1() {
        let data = QuotientData::new(&WeightedAction::cobordism(2, 1)).unwrap();
        let rho = data.blowup_fan.ray_index(&data.blowup_ray).unwrap();
        let (star, _) = data.blowup_fan.star(&[rho]).unwrap();
        assert_eq!(star.rays().len(), 5);
        let model = product_fan(&projective_space_fan(2), &projective_space_fan(1));
        assert!(find_isomorphism(&star, &model, None).is_some());
        assert!(data.blowup_fan.refines(&data.fan_minus).unwrap());
        assert!(data.blowup_fan.refines(&data.fan_plus).unwrap());
    }

    #[test]
    fn trivial_blowup() {
        let data = QuotientData::new(&WeightedAction::cobordism(0, 0)).unwrap();
        assert_eq!(data.blowup_fan, data.fan_minus);
    }

    #[test]
    fn morphisms_and_factorization() {
        let data = QuotientData::new(&WeightedAction::cobordism(1, 1)).unwrap();
        let ms = build_morphisms(&data).unwrap();
        assert_eq!(ms.b_minus.cone_assignment().len(), 4);
        assert!(ms.b_minus.cone_assignment().iter().all(|&t| t < 2));
        assert_eq!(ms.s_minus.cone_assignment(), &[0, 0]);
        assert!(ms.s_minus.compose(&ms.b_minus).unwrap() == ms.beta);
        let twice = FanMorphism::certify(
            IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]).unwrap(),
            data.blowup_fan.clone(),
            data.fan_minus.clone(),
        )
        .unwrap();
        assert!(check_factorization(&ms.s_minus, &twice, &ms.beta).is_err());
    }

    #[test]
    fn exceptional_loci_of_the_conifold() {
        let data = QuotientData::new(&WeightedAction::cobordism(1, 1)).unwrap();
        let ms = build_morphisms(&data).unwrap();
        let s = exceptional_locus(&ms.s_minus).unwrap();
        assert_eq!(s.minimal_cones.len(), 1);
        assert_eq!(s.codimension, Some(2));
        let xs: BTreeSet<LatticeVector> = data.x_images().into_iter().collect();
        let tau: BTreeSet<LatticeVector> = data
            .fan_minus
            .vectors_of(&s.minimal_cones[0])
            .into_iter()
            .collect();
        assert_eq!(tau, xs);
        let b = exceptional_locus(&ms.b_minus).unwrap();
        assert_eq!(b.codimension, Some(1));
        assert_eq!(
            data.blowup_fan.vectors_of(&b.minimal_cones[0]),
            vec![data.blowup_ray.clone()]
        );
        assert!(exceptional_locus(&FanMorphism::identity(&data.fan_minus))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn codimension_of_exceptional_loci() {
        let data = QuotientData::new(&WeightedAction::cobordism(2, 3)).unwrap();
        let ms = build_morphisms(&data).unwrap();
        assert_eq!(exceptional_locus(&ms.s_minus).unwrap().codimension, Some(4));
        assert_eq!(exceptional_locus(&ms.s_plus).unwrap().codimension, Some(3));
    }
}

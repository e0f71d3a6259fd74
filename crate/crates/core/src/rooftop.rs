//! Verification of the three rooftop-flip conditions on toric data, and the
//! end-to-end driver for the Atiyah flips `B₋/ℂ* ⇢ B₊/ℂ*`.
//!
//! Only the case where `Z₀` is the torus-fixed point of `W₀` is handled: the
//! fibers over `Z₀` are then stars of single cones, compared up to unimodular
//! equivalence with the fans of the model `Λ` and of `Λ±`.

use serde::{Deserialize, Serialize};

use crate::exact::{right_inverse, IntMatrix, LatticeVector};
use crate::polyhedral::{
    check_fibration, find_isomorphism, kernel_colors, product_fan, product_projections,
    projective_space_fan, verify_isomorphism, Cone, Fan,
};
use crate::toric_git::{
    build_morphisms, exceptional_locus, FanMorphism, QuotientData, WeightedAction,
};
use crate::Error;

pub const DEFAULT_CAP: usize = 6;

/// The data of a candidate rooftop flip: the common resolution `W`, the two
/// sides `W±`, the base `W₀`, the four maps and the model `Λ → Λ±`.
#[derive(Debug, Clone)]
pub struct RooftopWitness {
    pub w: Fan,
    pub w_minus: Fan,
    pub w_plus: Fan,
    pub w0: Cone,
    pub b_minus: FanMorphism,
    pub b_plus: FanMorphism,
    pub s_minus: FanMorphism,
    pub s_plus: FanMorphism,
    pub model_fan: Fan,
    pub model_minus: Fan,
    pub model_plus: Fan,
    pub model_projections: (IntMatrix, IntMatrix),
}

/// Deliberate damage to a witness, used as negative controls.
#[derive(Debug, Clone)]
pub enum Corruption {
    /// Replace `W₋ → W₀` by `β: W → W₀`, whose exceptional locus is a divisor.
    DivisorialSMinus,
    DivisorialSPlus,
    /// Replace `b₋` by the identity of `W₋`, which contracts nothing.
    BMinusWithoutDivisor,
    BPlusWithoutDivisor,
    /// Replace `b₋` by `s₋`, whose exceptional locus has codimension `l+1`.
    BMinusCodimTwo,
    /// Replace the model `Λ` and its projections.
    Model(Fan, IntMatrix, IntMatrix),
}

impl RooftopWitness {
    /// The witness for `B₋/ℂ* ⇢ B₊/ℂ*` modeled by `ℙᵐ × ℙˡ`.
    pub fn atiyah(q: &QuotientData) -> Result<Self, Error> {
        let ms = build_morphisms(q)?;
        let m = q.action.n_minus() - 1;
        let l = q.action.n_plus() - 1;
        let model_minus = projective_space_fan(m);
        let model_plus = projective_space_fan(l);
        Ok(Self {
            w: q.blowup_fan.clone(),
            w_minus: q.fan_minus.clone(),
            w_plus: q.fan_plus.clone(),
            w0: q.git_cone.clone(),
            b_minus: ms.b_minus,
            b_plus: ms.b_plus,
            s_minus: ms.s_minus,
            s_plus: ms.s_plus,
            model_fan: product_fan(&model_minus, &model_plus),
            model_projections: product_projections(m, l),
            model_minus,
            model_plus,
        })
    }

    pub fn corrupted(&self, c: Corruption) -> Result<Self, Error> {
        let mut out = self.clone();
        let id = IntMatrix::identity(self.w.rank());
        let base = Fan::from_cone(&self.w0);
        match c {
            Corruption::DivisorialSMinus => {
                out.w_minus = self.w.clone();
                out.s_minus = FanMorphism::certify(id, self.w.clone(), base)?;
            }
            Corruption::DivisorialSPlus => {
                out.w_plus = self.w.clone();
                out.s_plus = FanMorphism::certify(id, self.w.clone(), base)?;
            }
            Corruption::BMinusWithoutDivisor => out.b_minus = FanMorphism::identity(&self.w_minus),
            Corruption::BPlusWithoutDivisor => out.b_plus = FanMorphism::identity(&self.w_plus),
            Corruption::BMinusCodimTwo => out.b_minus = self.s_minus.clone(),
            Corruption::Model(fan, p_minus, p_plus) => {
                out.model_fan = fan;
                out.model_projections = (p_minus, p_plus);
            }
        }
        Ok(out)
    }
}

/// One exceptional locus as it appears in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusReport {
    pub map: String,
    pub cone_rays: Vec<Vec<i64>>,
    /// Dimension of the orbit cone, i.e. codimension of the locus.
    pub codimension: usize,
    pub dimension: usize,
    pub identified_as: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub pass: bool,
    pub reason: Option<String>,
    pub evidence: Vec<String>,
    pub loci: Vec<LocusReport>,
}

impl ConditionReport {
    fn new() -> Self {
        Self {
            pass: true,
            reason: None,
            evidence: Vec::new(),
            loci: Vec::new(),
        }
    }

    fn fail(&mut self, reason: impl Into<String>) {
        if self.pass {
            self.pass = false;
            self.reason = Some(reason.into());
        }
    }
}

pub fn projective_name(k: usize) -> String {
    format!("P^{k}")
}

fn to_i64(vs: &[LatticeVector]) -> Vec<Vec<i64>> {
    vs.iter()
        .map(|v| v.to_i64().expect("coordinates fit in i64"))
        .collect()
}

/// Condition (1): `s±` are small, with a single exceptional orbit closure over
/// the fixed point of `W₀`, isomorphic to `Λ±`.
pub fn check_condition_small(w: &RooftopWitness) -> ConditionReport {
    let mut report = ConditionReport::new();
    let base = Fan::from_cone(&w.w0);
    if !w.w0.is_pointed() || !w.w0.is_full_dimensional() {
        report.fail("W₀ is not a full-dimensional pointed cone, so Z₀ is not a point");
        return report;
    }
    for (s, model, name) in [
        (&w.s_minus, &w.model_minus, "s-"),
        (&w.s_plus, &w.model_plus, "s+"),
    ] {
        if s.target() != &base {
            report.fail(format!("{name} does not map to W₀"));
            continue;
        }
        let locus = match exceptional_locus(s) {
            Ok(l) => l,
            Err(e) => {
                report.fail(format!("{name}: {e}"));
                continue;
            }
        };
        if locus.is_empty() {
            report.fail(format!("{name} is an isomorphism"));
            continue;
        }
        if locus.minimal_cones.len() != 1 {
            report.fail(format!(
                "{name} has {} exceptional components",
                locus.minimal_cones.len()
            ));
            continue;
        }
        let tau = &locus.minimal_cones[0];
        let codim = locus.dimensions[0];
        let source = s.source();
        let tau_rays = source.vectors_of(tau);
        let mut entry = LocusReport {
            map: name.into(),
            cone_rays: to_i64(&tau_rays),
            codimension: codim,
            dimension: source.rank() - codim,
            identified_as: None,
        };
        if codim < 2 {
            report.fail(format!(
                "{name} is not small: exceptional locus has codimension {codim}"
            ));
            report.loci.push(entry);
            continue;
        }
        let images: Vec<LatticeVector> = tau_rays
            .iter()
            .map(|r| s.lattice_map().apply(r).unwrap())
            .collect();
        if w.w0.minimal_face_containing(&images).len() != w.w0.rays().len() {
            report.fail(format!(
                "{name} maps its exceptional locus onto a positive-dimensional Z₀"
            ));
            report.loci.push(entry);
            continue;
        }
        match source.star(tau) {
            Ok((star, _)) => match find_isomorphism(&star, model, None) {
                Some(_) => {
                    entry.identified_as = Some(projective_name(model.rank()));
                    report.evidence.push(format!(
                        "{name}: exceptional locus is a fiber over Z₀ = 0 isomorphic to {} of codimension {codim}",
                        projective_name(model.rank())
                    ));
                }
                None => report.fail(format!(
                    "{name}: exceptional fiber is not isomorphic to the model"
                )),
            },
            Err(e) => report.fail(format!("{name}: {e}")),
        }
        report.loci.push(entry);
    }
    report
}

/// The exceptional ray of `b` and the induced map from its star to the star
/// of the smallest cone of the target containing its image.
struct DivisorData {
    ray: LatticeVector,
    star: Fan,
    target_star: Fan,
    induced: IntMatrix,
}

fn divisor_data(b: &FanMorphism, name: &str) -> Result<(DivisorData, LocusReport), String> {
    let locus = exceptional_locus(b).map_err(|e| format!("{name}: {e}"))?;
    if locus.minimal_cones.len() != 1 {
        return Err(format!(
            "{name} has {} exceptional components",
            locus.minimal_cones.len()
        ));
    }
    let z = &locus.minimal_cones[0];
    let source = b.source();
    let report = LocusReport {
        map: name.into(),
        cone_rays: to_i64(&source.vectors_of(z)),
        codimension: locus.dimensions[0],
        dimension: source.rank() - locus.dimensions[0],
        identified_as: None,
    };
    if locus.dimensions[0] != 1 {
        return Err(format!(
            "{name}: Z has codimension {}, not a divisor",
            locus.dimensions[0]
        ));
    }
    let ray = source.rays()[z[0]].clone();
    let image = b.lattice_map().apply(&ray).map_err(|e| e.to_string())?;
    let owner = source
        .maximal_cones()
        .iter()
        .position(|c| c.contains(&z[0]))
        .expect("ray lies in a cone");
    let target = b.target();
    let target_cone = target.cone(b.cone_assignment()[owner]);
    let tau: Vec<usize> = target_cone
        .minimal_face_containing(&[image])
        .iter()
        .map(|&i| {
            target
                .ray_index(&target_cone.rays()[i])
                .expect("ray of the target")
        })
        .collect();
    let (star, p1) = source.star(&z[..1]).map_err(|e| e.to_string())?;
    let (target_star, p2) = target.star(&tau).map_err(|e| e.to_string())?;
    let s1 = right_inverse(&p1).ok_or("projection to the star is not surjective")?;
    let through = p2.mul(b.lattice_map()).map_err(|e| e.to_string())?;
    let induced = through.mul(&s1).map_err(|e| e.to_string())?;
    if induced.mul(&p1).map_err(|e| e.to_string())? != through {
        return Err(format!("{name} does not descend to the star of Z"));
    }
    Ok((
        DivisorData {
            ray,
            star,
            target_star,
            induced,
        },
        report,
    ))
}

/// Condition (2): `b±` both contract the same prime divisor `Z` onto `Z±`,
/// each as a projective bundle, and the square `W → W± → W₀` commutes.
pub fn check_condition_divisor(w: &RooftopWitness) -> ConditionReport {
    let mut report = ConditionReport::new();
    let mut rays = Vec::new();
    for (b, name) in [(&w.b_minus, "b-"), (&w.b_plus, "b+")] {
        match divisor_data(b, name) {
            Ok((d, mut entry)) => {
                match check_fibration(&d.star, &d.target_star, &d.induced) {
                    Ok(fib) => {
                        let k = fib.fiber.rank();
                        if k >= 1
                            && find_isomorphism(&fib.fiber, &projective_space_fan(k), None)
                                .is_some()
                        {
                            entry.identified_as = Some(format!("{}-bundle", projective_name(k)));
                            report.evidence.push(format!(
                                "{name}|Z is a {}-bundle over a rank-{} base",
                                projective_name(k),
                                d.target_star.rank()
                            ));
                        } else {
                            report.fail(format!(
                                "{name}|Z has fiber fan of rank {k} that is not projective space"
                            ));
                        }
                    }
                    Err(e) => report.fail(format!("{name}|Z is not a fibration: {e}")),
                }
                rays.push(d.ray);
                report.loci.push(entry);
            }
            Err(e) => report.fail(e),
        }
    }
    if rays.len() == 2 && rays[0] != rays[1] {
        report.fail("b- and b+ contract different divisors");
    }
    match (w.s_minus.compose(&w.b_minus), w.s_plus.compose(&w.b_plus)) {
        (Ok(a), Ok(b))
            if a.lattice_map() == b.lattice_map()
                && a.source() == b.source()
                && a.target() == b.target() =>
        {
            report.evidence.push("s-∘b- = s+∘b+".into());
        }
        (Ok(_), Ok(_)) => report.fail("s-∘b- and s+∘b+ differ"),
        (Err(e), _) | (_, Err(e)) => report.fail(format!("diagram does not compose: {e}")),
    }
    report
}

/// Condition (3): over `Z₀ = 0` the fiber `Z` is `Λ`, with `b±|_Z`
/// corresponding to the model projections `p±`.
pub fn check_condition_fiber(w: &RooftopWitness) -> ConditionReport {
    let mut report = ConditionReport::new();
    if !w.w0.is_pointed() || !w.w0.is_full_dimensional() {
        report.fail("Z₀ is not a point");
        return report;
    }
    let (minus, plus) = match (
        divisor_data(&w.b_minus, "b-"),
        divisor_data(&w.b_plus, "b+"),
    ) {
        (Ok((a, _)), Ok((b, _))) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            report.fail(e);
            return report;
        }
    };
    if minus.ray != plus.ray {
        report.fail("b- and b+ contract different divisors");
        return report;
    }
    let (p_minus, p_plus) = &w.model_projections;
    let colors = kernel_colors(&minus.star, &[&minus.induced, &plus.induced]);
    let model_colors = kernel_colors(&w.model_fan, &[p_minus, p_plus]);
    let Some(phi) = find_isomorphism(&minus.star, &w.model_fan, Some((&colors, &model_colors)))
    else {
        report.fail(
            "the fiber over Z₀ is not isomorphic to the model compatibly with the projections",
        );
        return report;
    };
    report.evidence.push(format!(
        "fiber over Z₀ is isomorphic to the model fan ({} rays, {} maximal cones)",
        w.model_fan.rays().len(),
        w.model_fan.maximal_cones().len()
    ));
    for (d, p, model, name) in [
        (&minus, p_minus, &w.model_minus, "-"),
        (&plus, p_plus, &w.model_plus, "+"),
    ] {
        match induced_isomorphism(d, p, &phi, model) {
            Ok(()) => report
                .evidence
                .push(format!("b{name}|Z corresponds to p{name}")),
            Err(e) => report.fail(format!("b{name}|Z does not match p{name}: {e}")),
        }
    }
    report
}

/// Finds `ψ` with `ψ ∘ A = p ∘ φ` and checks it is a fan isomorphism onto the model base.
fn induced_isomorphism(
    d: &DivisorData,
    p: &IntMatrix,
    phi: &IntMatrix,
    model: &Fan,
) -> Result<(), String> {
    let s = right_inverse(&d.induced).ok_or("induced map is not surjective")?;
    let p_phi = p.mul(phi).map_err(|e| e.to_string())?;
    let psi = p_phi.mul(&s).map_err(|e| e.to_string())?;
    if psi.mul(&d.induced).map_err(|e| e.to_string())? != p_phi {
        return Err("kernels do not match".into());
    }
    if !verify_isomorphism(&d.target_star, model, &psi) {
        return Err("induced map on the base is not a fan isomorphism".into());
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitSummary {
    pub quotient_lattice_rank: usize,
    pub git_cone_rays: Vec<Vec<i64>>,
    pub hilbert_basis_size: usize,
    pub invariant_monomials: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSummary {
    pub minus_cones: usize,
    pub plus_cones: usize,
    pub blowup_cones: usize,
    pub minus_smooth: bool,
    pub plus_smooth: bool,
    pub blowup_smooth: bool,
    pub blowup_refines_both: bool,
    pub blowup_ray: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipReport {
    pub m: usize,
    pub l: usize,
    pub model: String,
    pub git: GitSummary,
    pub fans: FanSummary,
    pub factorization: bool,
    pub condition1: ConditionReport,
    pub condition2: ConditionReport,
    pub condition3: ConditionReport,
    pub pass: bool,
}

pub fn verify_atiyah(m: usize, l: usize) -> Result<FlipReport, Error> {
    verify_atiyah_with_cap(m, l, DEFAULT_CAP)
}

pub fn verify_atiyah_with_cap(m: usize, l: usize, cap: usize) -> Result<FlipReport, Error> {
    if m == 0 || l == 0 {
        return Err(Error::Invalid(format!(
            "m = {m}, l = {l}: both must be at least 1 for a flip"
        )));
    }
    if m > cap || l > cap {
        return Err(Error::CapExceeded(format!(
            "m = {m}, l = {l} exceeds the cap {cap}"
        )));
    }
    let q = QuotientData::new(&WeightedAction::cobordism(m, l))?;
    let factorization = build_morphisms(&q).is_ok();
    let witness = RooftopWitness::atiyah(&q)?;
    let git = GitSummary {
        quotient_lattice_rank: q.quotient_lattice_rank,
        git_cone_rays: to_i64(q.git_cone.rays()),
        hilbert_basis_size: q.hilbert_basis.len(),
        invariant_monomials: {
            let t = q.projection.transpose();
            let mut v: Vec<LatticeVector> = q
                .hilbert_basis
                .iter()
                .map(|h| t.apply(h))
                .collect::<Result<_, _>>()?;
            v.sort();
            to_i64(&v)
        },
    };
    let fans = FanSummary {
        minus_cones: q.fan_minus.maximal_cones().len(),
        plus_cones: q.fan_plus.maximal_cones().len(),
        blowup_cones: q.blowup_fan.maximal_cones().len(),
        minus_smooth: q.fan_minus.is_smooth(),
        plus_smooth: q.fan_plus.is_smooth(),
        blowup_smooth: q.blowup_fan.is_smooth(),
        blowup_refines_both: q.blowup_fan.refines(&q.fan_minus)?
            && q.blowup_fan.refines(&q.fan_plus)?,
        blowup_ray: q.blowup_ray.to_i64().expect("small coordinates"),
    };
    Ok(assemble_report(m, l, git, fans, factorization, &witness))
}

/// Runs the three checks on a witness and merges the verdicts.
pub fn assemble_report(
    m: usize,
    l: usize,
    git: GitSummary,
    fans: FanSummary,
    factorization: bool,
    witness: &RooftopWitness,
) -> FlipReport {
    let condition1 = check_condition_small(witness);
    let condition2 = check_condition_divisor(witness);
    let condition3 = check_condition_fiber(witness);
    let pass = condition1.pass && condition2.pass && condition3.pass;
    FlipReport {
        m,
        l,
        model: format!("{} x {}", projective_name(m), projective_name(l)),
        git,
        fans,
        factorization,
        condition1,
        condition2,
        condition3,
        pass,
    }
}

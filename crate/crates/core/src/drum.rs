//! Drums built on `(Y, 𝓛₋, 𝓛₊)` for the two supported kinds of `Y`:
//! products `ℙᵐ × ℙˡ` and the flag variety `ℙ(T_{ℙⁿ}) ⊂ ℙⁿ × (ℙⁿ)^∨`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{integer_kernel, rank_of_vectors, IntMatrix, LatticeVector};
use crate::polyhedral::{
    check_fibration, find_isomorphism, product_fan, product_projections, projective_space_fan, Fan,
};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DrumKind {
    /// `Y = ℙᵐ × ℙˡ`, `𝓛± = 𝒪(bidegree)`.
    Product {
        m: usize,
        l: usize,
        minus: (u32, u32),
        plus: (u32, u32),
    },
    /// `Y = ℙ(T_{ℙⁿ})` with `𝓛₋ = p₋*𝒪(d₋)`, `𝓛₊ = p₊*𝒪(d₊)`.
    Flag {
        n: usize,
        minus_degree: u32,
        plus_degree: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrumTriple {
    pub kind: DrumKind,
    pub dim_y: usize,
    pub h0_minus: u64,
    pub h0_plus: u64,
    /// `(deg 𝓛₊|_{F₋}, deg 𝓛₋|_{F₊})`.
    pub fiber_degrees: (u32, u32),
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1u64, |acc, i| acc * (n + 1 - i) / i)
}

/// `h⁰(ℙᵐ × ℙˡ, 𝒪(a, b))`.
fn h0_product(m: usize, l: usize, (a, b): (u32, u32)) -> u64 {
    binomial(m as u64 + a as u64, a as u64) * binomial(l as u64 + b as u64, b as u64)
}

impl DrumTriple {
    pub fn product(m: usize, l: usize, minus: (u32, u32), plus: (u32, u32)) -> Result<Self, Error> {
        if minus == (0, 0) || plus == (0, 0) {
            return Err(Error::Invalid("line bundles must be nontrivial".into()));
        }
        Ok(Self {
            kind: DrumKind::Product { m, l, minus, plus },
            dim_y: m + l,
            h0_minus: h0_product(m, l, minus),
            h0_plus: h0_product(m, l, plus),
            fiber_degrees: (plus.1, minus.0),
        })
    }

    /// The triple `(ℙᵐ × ℙˡ, 𝒪(1,0), 𝒪(0,1))`.
    pub fn segre(m: usize, l: usize) -> Self {
        Self::product(m, l, (1, 0), (0, 1)).expect("nontrivial bundles")
    }

    pub fn flag(n: usize, minus_degree: u32, plus_degree: u32) -> Result<Self, Error> {
        if n == 0 || minus_degree == 0 || plus_degree == 0 {
            return Err(Error::Invalid(
                "flag triple needs n ≥ 1 and positive degrees".into(),
            ));
        }
        Ok(Self {
            kind: DrumKind::Flag {
                n,
                minus_degree,
                plus_degree,
            },
            dim_y: 2 * n - 1,
            h0_minus: binomial((n as u64) + minus_degree as u64, minus_degree as u64),
            h0_plus: binomial((n as u64) + plus_degree as u64, plus_degree as u64),
            fiber_degrees: (plus_degree, minus_degree),
        })
    }

    /// `(ℙ(T_{ℙⁿ}), p₋*𝒪(1), p₊*𝒪(1))`, the triple of the quadric `Q²ⁿ`.
    pub fn quadric(n: usize) -> Result<Self, Error> {
        Self::flag(n, 1, 1)
    }

    /// The same triple with the roles of `𝓛₋` and `𝓛₊` exchanged.
    pub fn swapped(&self) -> Self {
        let kind = match &self.kind {
            DrumKind::Product { m, l, minus, plus } => DrumKind::Product {
                m: *l,
                l: *m,
                minus: (plus.1, plus.0),
                plus: (minus.1, minus.0),
            },
            DrumKind::Flag {
                n,
                minus_degree,
                plus_degree,
            } => DrumKind::Flag {
                n: *n,
                minus_degree: *plus_degree,
                plus_degree: *minus_degree,
            },
        };
        Self {
            kind,
            dim_y: self.dim_y,
            h0_minus: self.h0_plus,
            h0_plus: self.h0_minus,
            fiber_degrees: (self.fiber_degrees.1, self.fiber_degrees.0),
        }
    }
}

/// `h⁰(L₋) + h⁰(L₊)`; the drum lives in the projective space of one dimension less.
pub fn ambient_dimension(t: &DrumTriple) -> u64 {
    t.h0_minus + t.h0_plus
}

pub fn drum_dimension(t: &DrumTriple) -> usize {
    t.dim_y + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubVerdict {
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessVerdict {
    pub nef_cone: SubVerdict,
    pub bundle_contractions: SubVerdict,
    pub fiber_degrees: SubVerdict,
    pub smooth: bool,
}

/// The three criteria for a drum to be smooth: `Nef(Y) = ⟨𝓛₋, 𝓛₊⟩`, both
/// `p±` projective bundles, and `deg 𝓛∓|_{F±} = 1`.
pub fn smoothness_check(t: &DrumTriple) -> Result<SmoothnessVerdict, Error> {
    let (nef_cone, bundle_contractions) = match &t.kind {
        DrumKind::Product { m, l, minus, plus } => {
            if *m == 0 || *l == 0 {
                return Err(Error::Unsupported("product kind needs m, l ≥ 1".into()));
            }
            product_checks(*m, *l, *minus, *plus)?
        }
        DrumKind::Flag {
            n,
            minus_degree,
            plus_degree,
        } => {
            if *n < 2 {
                return Err(Error::Unsupported("ℙ(T_ℙ¹) has Picard number one".into()));
            }
            flag_checks(*n, *minus_degree, *plus_degree)
        }
    };
    let (a, b) = t.fiber_degrees;
    let fiber_degrees = SubVerdict {
        pass: a == 1 && b == 1,
        detail: format!("deg 𝓛+|F- = {a}, deg 𝓛-|F+ = {b}"),
    };
    let smooth = nef_cone.pass && bundle_contractions.pass && fiber_degrees.pass;
    Ok(SmoothnessVerdict {
        nef_cone,
        bundle_contractions,
        fiber_degrees,
        smooth,
    })
}

/// Intersection numbers `D_ρ · C_τ` of every torus-invariant prime divisor with
/// every wall curve of a smooth complete fan. Row `i` belongs to ray `i`.
fn wall_intersections(f: &Fan) -> Result<Vec<Vec<BigInt>>, Error> {
    let k = f.rays().len();
    let cones = f.maximal_cones();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let common: Vec<usize> = cones[i]
                .iter()
                .copied()
                .filter(|r| cones[j].contains(r))
                .collect();
            if common.len() + 1 != cones[i].len() || cones[i].len() != f.rank() {
                continue;
            }
            let u = *cones[i].iter().find(|r| !common.contains(r)).unwrap();
            let u2 = *cones[j].iter().find(|r| !common.contains(r)).unwrap();
            // wall relation u + u' + Σ aᵢ vᵢ = 0
            let mut gens = vec![f.rays()[u].clone(), f.rays()[u2].clone()];
            gens.extend(common.iter().map(|&c| f.rays()[c].clone()));
            let m = IntMatrix::from_vectors(&gens, f.rank()).transpose();
            let kernel = integer_kernel(&m);
            if kernel.len() != 1 {
                return Err(Error::Invalid("wall without a unique relation".into()));
            }
            let mut rel = kernel[0].clone();
            if rel.0[0].is_negative() {
                rel = -&rel;
            }
            if !rel.0[0].is_one() || !rel.0[1].is_one() {
                return Err(Error::Invalid("fan is not smooth along a wall".into()));
            }
            let mut col = vec![BigInt::zero(); k];
            col[u] = rel.0[0].clone();
            col[u2] = rel.0[1].clone();
            for (idx, &c) in common.iter().enumerate() {
                col[c] = rel.0[idx + 2].clone();
            }
            columns.push(col);
        }
    }
    Ok((0..k)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect())
}

/// `Nef(ℙᵐ × ℙˡ) = ⟨𝓛₋, 𝓛₊⟩` computed from the product fan, and the
/// contractions defined by `𝓛±` checked to be the two projective bundles.
fn product_checks(
    m: usize,
    l: usize,
    minus: (u32, u32),
    plus: (u32, u32),
) -> Result<(SubVerdict, SubVerdict), Error> {
    let fan = product_fan(&projective_space_fan(m), &projective_space_fan(l));
    let table = wall_intersections(&fan)?;
    // a divisor of bidegree (a, b): a copy of a first-factor ray plus b of a second-factor ray
    let first = fan
        .rays()
        .iter()
        .position(|r| r.0[m..].iter().all(Zero::is_zero))
        .expect("first factor ray");
    let second = fan
        .rays()
        .iter()
        .position(|r| r.0[..m].iter().all(Zero::is_zero))
        .expect("second factor ray");
    let class = |(a, b): (u32, u32)| -> LatticeVector {
        LatticeVector(
            (0..table[0].len())
                .map(|c| BigInt::from(a) * &table[first][c] + BigInt::from(b) * &table[second][c])
                .collect(),
        )
    };
    let lm = class(minus);
    let lp = class(plus);
    let rows: Vec<LatticeVector> = table.iter().map(|r| LatticeVector(r.clone())).collect();
    let picard_rank = rank_of_vectors(&rows.iter().collect::<Vec<_>>(), table[0].len());
    let nef = |v: &LatticeVector| v.0.iter().all(|x| !x.is_negative());
    let on_boundary = |v: &LatticeVector| v.0.iter().any(Zero::is_zero);
    let independent = rank_of_vectors(&[&lm, &lp], lm.dim()) == 2;
    let nef_pass = picard_rank == 2
        && nef(&lm)
        && nef(&lp)
        && independent
        && on_boundary(&lm)
        && on_boundary(&lp);
    let nef_cone = SubVerdict {
        pass: nef_pass,
        detail: format!(
            "Picard rank {picard_rank}; 𝓛- = O{minus:?}, 𝓛+ = O{plus:?}; {} wall curves",
            table[0].len()
        ),
    };

    let (p_first, p_second) = product_projections(m, l);
    let contraction = |(a, b): (u32, u32)| -> Option<(IntMatrix, Fan)> {
        match (a, b) {
            (0, _) => Some((p_second.clone(), projective_space_fan(l))),
            (_, 0) => Some((p_first.clone(), projective_space_fan(m))),
            _ => None,
        }
    };
    let mut details = Vec::new();
    let mut pass = true;
    let targets: Vec<usize> = [minus, plus]
        .iter()
        .map(|&(a, _)| usize::from(a == 0))
        .collect();
    if targets[0] == targets[1] {
        pass = false;
        details.push("𝓛- and 𝓛+ contract the same factor".to_string());
    }
    for (bundle, name) in [(minus, "p-"), (plus, "p+")] {
        match contraction(bundle) {
            Some((map, base)) => match check_fibration(&fan, &base, &map) {
                Ok(fib) => {
                    let k = fib.fiber.rank();
                    let is_proj =
                        find_isomorphism(&fib.fiber, &projective_space_fan(k), None).is_some();
                    pass &= is_proj;
                    details.push(format!("{name}: fibers P^{k}"));
                }
                Err(e) => {
                    pass = false;
                    details.push(format!("{name}: {e}"));
                }
            },
            None => {
                pass = false;
                details.push(format!("{name}: O{bundle:?} is ample, no contraction"));
            }
        }
    }
    Ok((
        nef_cone,
        SubVerdict {
            pass,
            detail: details.join("; "),
        },
    ))
}

/// `ℙ(T_{ℙⁿ}) = {(p, H) : H(p) = 0}`: the fiber of `p₋` over `p` is the
/// hyperplane `{H : H(p) = 0}` of `(ℙⁿ)^∨` and symmetrically for `p₊`. The
/// fibers are checked to be linear `ℙⁿ⁻¹` over a spread of base points. Lines
/// `ℓ±` in the fibers of `p±` span the Mori cone; the degrees of `𝓛±` on
/// them are read off from the linear parametrizations of the two factors.
fn flag_checks(n: usize, d_minus: u32, d_plus: u32) -> (SubVerdict, SubVerdict) {
    let mut points: Vec<LatticeVector> = (0..=n).map(|i| LatticeVector::unit(n + 1, i)).collect();
    points.push(LatticeVector(
        (1..=n as i64 + 1).map(BigInt::from).collect(),
    ));
    let hyperplane = |p: &LatticeVector| {
        integer_kernel(&IntMatrix::from_vectors(std::slice::from_ref(p), n + 1))
    };
    let bundles = points.iter().all(|p| hyperplane(p).len() == n);

    // ℓ₋ = {p} × (pencil in p^⊥), ℓ₊ = (pencil in H^⊥) × {H}; a linear map ℙ¹ → ℙᵏ has degree = rank − 1
    let p = &points[0];
    let pencil = hyperplane(p);
    let line_degree = |a: &LatticeVector, b: &LatticeVector| rank_of_vectors(&[a, b], a.dim()) - 1;
    let on_minus_line = (line_degree(p, p), line_degree(&pencil[0], &pencil[1]));
    let on_plus_line = (line_degree(&pencil[0], &pencil[1]), line_degree(p, p));
    // 𝓛₋ = O(d₋, 0), 𝓛₊ = O(0, d₊)
    let lm = [
        d_minus as usize * on_minus_line.0,
        d_minus as usize * on_plus_line.0,
    ];
    let lp = [
        d_plus as usize * on_minus_line.1,
        d_plus as usize * on_plus_line.1,
    ];
    let nef = lm.contains(&0)
        && lp.contains(&0)
        && lm != [0, 0]
        && lp != [0, 0]
        && lm.iter().position(|&x| x == 0) != lp.iter().position(|&x| x == 0);
    (
        SubVerdict {
            pass: nef,
            detail: format!(
                "incidence model in P^{n} x (P^{n})^∨; 𝓛-·(ℓ-, ℓ+) = {lm:?}, 𝓛+·(ℓ-, ℓ+) = {lp:?}"
            ),
        },
        SubVerdict {
            pass: bundles,
            detail: format!("fibers of p± are linear P^{}", n - 1),
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuData {
    pub mu_sink: i64,
    pub mu_source: i64,
    pub bandwidth: i64,
}

/// μ values of the fixed components of a diagonal action on projective space
/// with the given coordinate weights, normalized so that the sink (the
/// component of largest weight, where `t → ∞` limits land) has `μ = 0`.
pub fn mu_from_weights(weights: &[i64]) -> Result<MuData, Error> {
    let max = *weights
        .iter()
        .max()
        .ok_or_else(|| Error::Invalid("no coordinates".into()))?;
    let min = *weights.iter().min().unwrap();
    if max == min {
        return Err(Error::Invalid("trivial action".into()));
    }
    Ok(MuData {
        mu_sink: 0,
        mu_source: max - min,
        bandwidth: max - min,
    })
}

/// Fixed components of a diagonal action on `ℙᴺ`, one per distinct weight,
/// as `(weight, coordinate indices)` sorted by decreasing weight (sink first).
pub fn fixed_components(weights: &[i64]) -> Vec<(i64, Vec<usize>)> {
    let mut distinct: Vec<i64> = weights.to_vec();
    distinct.sort_unstable_by(|a, b| b.cmp(a));
    distinct.dedup();
    distinct
        .into_iter()
        .map(|w| (w, (0..weights.len()).filter(|&i| weights[i] == w).collect()))
        .collect()
}

/// Coordinate weights of the drum action on `ℙ(H⁰(L₋) ⊕ H⁰(L₊))^∨`: weight one on
/// the `Y₋` block, zero on the `Y₊` block.
pub fn drum_weights(t: &DrumTriple) -> Vec<i64> {
    let mut w = vec![1; t.h0_minus as usize];
    w.extend(std::iter::repeat_n(0, t.h0_plus as usize));
    w
}

pub fn bandwidth_of_drum(t: &DrumTriple) -> Result<MuData, Error> {
    mu_from_weights(&drum_weights(t))
}

/// Order of the isotropy group at a point with the given support: the gcd of
/// the weight differences over nonvanishing coordinates (zero when fixed).
pub fn isotropy_order(weights: &[i64], support: &[usize]) -> u64 {
    let Some(&first) = support.first() else {
        return 0;
    };
    support
        .iter()
        .fold(0i64, |g, &i| g.gcd(&(weights[i] - weights[first])))
        .unsigned_abs()
}

/// Whether the action on all of `ℙᴺ` is equalized: every non-fixed point has
/// trivial isotropy. Supports with two weights suffice, since isotropy only
/// grows on smaller supports.
pub fn is_equalized(weights: &[i64]) -> bool {
    let comps = fixed_components(weights);
    comps.iter().enumerate().all(|(i, (_, a))| {
        comps[i + 1..]
            .iter()
            .all(|(_, b)| isotropy_order(weights, &[a[0], b[0]]) == 1)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegreCertificate {
    pub m: usize,
    pub l: usize,
    pub ambient_dimension: u64,
    pub drum_dimension: usize,
    /// `X = ℙ^{m+l+1}`.
    pub projective_dimension: usize,
    pub fills_ambient: bool,
    pub sink_dimension: usize,
    pub source_dimension: usize,
    pub weights: Vec<i64>,
    pub mu: MuData,
    pub equalized: bool,
    pub smoothness: Option<SmoothnessVerdict>,
    pub pass: bool,
}

/// `ℙ^{m+l+1}` as the drum over `(ℙᵐ × ℙˡ, 𝒪(1,0), 𝒪(0,1))`, cross-checked
/// against the action with weight one on `m+1` coordinates.
pub fn segre_drum(m: usize, l: usize) -> Result<SegreCertificate, Error> {
    let t = DrumTriple::segre(m, l);
    let ambient = ambient_dimension(&t);
    let dim = drum_dimension(&t);
    let weights = drum_weights(&t);
    let comps = fixed_components(&weights);
    let sink_dimension = comps[0].1.len() - 1;
    let source_dimension = comps[comps.len() - 1].1.len() - 1;
    let mu = bandwidth_of_drum(&t)?;
    let smoothness = if m >= 1 && l >= 1 {
        Some(smoothness_check(&t)?)
    } else {
        None
    };
    let fills_ambient = ambient == dim as u64 + 1;
    let pass = fills_ambient
        && ambient == (m + l + 2) as u64
        && comps.len() == 2
        && sink_dimension == m
        && source_dimension == l
        && mu.bandwidth == 1
        && smoothness.as_ref().is_none_or(|s| s.smooth);
    Ok(SegreCertificate {
        m,
        l,
        ambient_dimension: ambient,
        drum_dimension: dim,
        projective_dimension: ambient as usize - 1,
        fills_ambient,
        sink_dimension,
        source_dimension,
        equalized: is_equalized(&weights),
        weights,
        mu,
        smoothness,
        pass,
    })
}

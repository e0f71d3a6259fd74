//! The quadric drum `Q²ⁿ = {x₀x_{n+1} + … + xₙx_{2n+1} = 0} ⊂ ℙ²ⁿ⁺¹` with the
//! action `t·[x : y] = [t x : y]`, checked point by point in exact arithmetic.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::drum::{fixed_components, mu_from_weights, MuData};
use crate::toric_git::{cobordism_membership, Membership, WeightedAction};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadricModel {
    n: usize,
}

/// A point of projective space, scaled so that its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec<BigRational>);

impl ProjPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self, Error> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Invalid("all coordinates vanish".into()));
        };
        Ok(Self(coords.into_iter().map(|c| c / &lead).collect()))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self, Error> {
        Self::new(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl QuadricModel {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coordinate_count(&self) -> usize {
        2 * self.n + 2
    }

    /// Weight 1 on the `x` block, 0 on the `y` block.
    pub fn weights(&self) -> Vec<i64> {
        let mut w = vec![1; self.n + 1];
        w.extend(std::iter::repeat_n(0, self.n + 1));
        w
    }

    /// The affine action `(t v₋, t⁻¹ v₊)` on the cone `V^∨`.
    pub fn affine_action(&self) -> WeightedAction {
        WeightedAction::cobordism(self.n, self.n)
    }

    fn check_len(&self, len: usize) -> Result<(), Error> {
        if len != self.coordinate_count() {
            return Err(Error::Dimension(format!(
                "{len} coordinates, expected {}",
                self.coordinate_count()
            )));
        }
        Ok(())
    }

    /// `q(v) = Σ vᵢ v_{n+1+i}`.
    pub fn form(&self, v: &[BigRational]) -> Result<BigRational, Error> {
        self.check_len(v.len())?;
        Ok(pairing(&v[..=self.n], &v[self.n + 1..]))
    }

    pub fn on_quadric(&self, p: &ProjPoint) -> Result<bool, Error> {
        Ok(self.form(p.coords())?.is_zero())
    }

    /// `t·v` on affine representatives.
    pub fn act(&self, t: &BigRational, v: &[BigRational]) -> Vec<BigRational> {
        v.iter()
            .enumerate()
            .map(|(i, c)| if i <= self.n { c * t } else { c.clone() })
            .collect()
    }

    fn x_block<'a>(&self, v: &'a [BigRational]) -> &'a [BigRational] {
        &v[..=self.n]
    }

    fn y_block<'a>(&self, v: &'a [BigRational]) -> &'a [BigRational] {
        &v[self.n + 1..]
    }

    pub fn is_fixed(&self, p: &ProjPoint) -> bool {
        all_zero(self.x_block(p.coords())) || all_zero(self.y_block(p.coords()))
    }

    pub fn in_y_minus(&self, p: &ProjPoint) -> bool {
        all_zero(self.y_block(p.coords()))
    }

    pub fn in_y_plus(&self, p: &ProjPoint) -> bool {
        all_zero(self.x_block(p.coords()))
    }
}

fn all_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn pairing(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbLimits {
    /// `lim_{t→∞} t·p`, in `Y₋`.
    pub sink: ProjPoint,
    /// `lim_{t→0} t·p`, in `Y₊`.
    pub source: ProjPoint,
    /// Set when `p` is itself fixed; both limits are then `p`.
    pub fixed: bool,
}

pub fn bb_limits(m: &QuadricModel, p: &ProjPoint) -> Result<BbLimits, Error> {
    if !m.on_quadric(p)? {
        return Err(Error::Invalid("point is not on the quadric".into()));
    }
    if m.is_fixed(p) {
        return Ok(BbLimits {
            sink: p.clone(),
            source: p.clone(),
            fixed: true,
        });
    }
    let n = m.n;
    let zero = BigRational::zero();
    let sink: Vec<BigRational> = p
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| if i <= n { c.clone() } else { zero.clone() })
        .collect();
    let source: Vec<BigRational> = p
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| if i > n { c.clone() } else { zero.clone() })
        .collect();
    Ok(BbLimits {
        sink: ProjPoint::new(sink)?,
        source: ProjPoint::new(source)?,
        fixed: false,
    })
}

/// `⟨p₋, h⟩` for the limit pair of `p`, read as a point of `ℙ(V)` and a
/// hyperplane of `ℙ(V^∨)`. Works off the quadric too; the value is zero exactly
/// when `q(p) = 0`.
pub fn incidence_pairing(m: &QuadricModel, p: &ProjPoint) -> Result<BigRational, Error> {
    m.check_len(p.len())?;
    let x = m.x_block(p.coords());
    let y = m.y_block(p.coords());
    if all_zero(x) || all_zero(y) {
        return Err(Error::Invalid("one block of the point vanishes".into()));
    }
    Ok(pairing(x, y))
}

pub fn incidence_check(m: &QuadricModel, p: &ProjPoint) -> Result<bool, Error> {
    Ok(incidence_pairing(m, p)?.is_zero())
}

/// `B±` membership of a point of the affine cone `X̂`.
pub fn cone_membership(m: &QuadricModel, v: &[BigRational]) -> Result<Membership, Error> {
    if !m.form(v)?.is_zero() {
        return Err(Error::Invalid(
            "vector is not on the affine cone over Q".into(),
        ));
    }
    cobordism_membership(&m.affine_action(), v)
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> BigRational {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=9);
        if !nonzero || num != 0 {
            return BigRational::new(num.into(), den.into());
        }
    }
}

/// A random point of `Q` with both blocks nonzero: every coordinate but one
/// `y_k` is drawn at random with `x_k ≠ 0`, and `y_k` solves `q = 0`.
pub fn sample_point(m: &QuadricModel, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let n = m.n;
    loop {
        let mut v: Vec<BigRational> = (0..m.coordinate_count())
            .map(|_| random_rational(rng, false))
            .collect();
        let k = rng.gen_range(0..=n);
        v[k] = random_rational(rng, true);
        v[n + 1 + k] = BigRational::zero();
        let rest: BigRational = (0..=n)
            .filter(|&i| i != k)
            .map(|i| &v[i] * &v[n + 1 + i])
            .sum();
        v[n + 1 + k] = -rest / &v[k];
        if !all_zero(&v[n + 1..]) {
            return v;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MukaiCertificate {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Support patterns examined for the fixed-locus check.
    pub support_patterns: u64,
    pub fixed_locus_is_y_minus_and_y_plus: bool,
    pub mu: MuData,
    pub limit_pairs_checked: usize,
    pub limits_fixed_and_on_q: bool,
    pub incidence_holds: bool,
    pub pairing_equals_form: bool,
    pub y_minus_points_only_in_b_minus: bool,
    pub general_points_in_both: bool,
    pub homothety_commutes: bool,
    pub dim_y_minus: usize,
    pub dim_y_plus: usize,
    pub quotient_dimension: usize,
    pub codimension: usize,
    pub small: bool,
    pub notes: Vec<String>,
    pub pass: bool,
}

/// Orbit-level evidence that `X̂ ∩ B₋/ℂ* ⇢ X̂ ∩ B₊/ℂ*` is modeled by `ℙ(T_{ℙⁿ})`.
pub fn mukai_witness(n: usize, samples: usize, seed: u64) -> Result<MukaiCertificate, Error> {
    let m = QuadricModel::new(n)?;
    if samples == 0 {
        return Err(Error::Invalid("at least one sample is needed".into()));
    }
    let weights = m.weights();
    let (patterns, fixed_ok) = fixed_locus_by_support(&m, &weights);
    let mu = mu_from_weights(&weights)?;
    let comps = fixed_components(&weights);
    let sink_block_is_x = comps[0].1 == (0..=n).collect::<Vec<_>>();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut limits_ok = true;
    let mut incidence_ok = true;
    let mut pairing_ok = true;
    let mut both_ok = true;
    let mut minus_only_ok = true;
    let mut homothety_ok = true;
    let affine = m.affine_action();
    let homothety = WeightedAction::new(n + 1, n + 1, vec![1; 2 * n + 2])?;
    for _ in 0..samples {
        let v = sample_point(&m, &mut rng);
        let p = ProjPoint::new(v.clone())?;
        let lim = bb_limits(&m, &p)?;
        limits_ok &= !lim.fixed
            && m.in_y_minus(&lim.sink)
            && m.in_y_plus(&lim.source)
            && m.on_quadric(&lim.sink)?
            && m.on_quadric(&lim.source)?
            && bb_limits(&m, &lim.sink)?.fixed
            && bb_limits(&m, &lim.source)?.fixed;
        incidence_ok &= incidence_check(&m, &p)?;

        // the pairing equals q identically, also off Q
        let mut off = v.clone();
        off[n + 1] += random_rational(&mut rng, true);
        if let Ok(off_p) = ProjPoint::new(off.clone()) {
            if let Ok(pair) = incidence_pairing(&m, &off_p) {
                pairing_ok &= pair == m.form(off_p.coords())?;
            }
        }

        let member = cone_membership(&m, &v)?;
        both_ok &= member.in_b_minus && member.in_b_plus;
        let mut on_y_minus = v.clone();
        for c in on_y_minus[n + 1..].iter_mut() {
            *c = BigRational::zero();
        }
        let member = cone_membership(&m, &on_y_minus)?;
        minus_only_ok &= member.in_b_minus && !member.in_b_plus;

        let t = random_rational(&mut rng, true);
        let h = random_rational(&mut rng, true);
        homothety_ok &= commute(&affine, &homothety, &t, &h, &v);
    }

    let quotient_dimension = 2 * n;
    let codimension = quotient_dimension - n;
    let small = codimension >= 2;
    let mut notes = Vec::new();
    if !small {
        notes.push(format!("n = {n}: Y± have codimension {codimension} in the quotients, below the smallness threshold"));
    }
    let pass = fixed_ok
        && sink_block_is_x
        && mu.bandwidth == 1
        && limits_ok
        && incidence_ok
        && pairing_ok
        && both_ok
        && minus_only_ok
        && homothety_ok;
    Ok(MukaiCertificate {
        n,
        samples,
        seed,
        support_patterns: patterns,
        fixed_locus_is_y_minus_and_y_plus: fixed_ok,
        mu,
        limit_pairs_checked: samples,
        limits_fixed_and_on_q: limits_ok,
        incidence_holds: incidence_ok,
        pairing_equals_form: pairing_ok,
        y_minus_points_only_in_b_minus: minus_only_ok,
        general_points_in_both: both_ok,
        homothety_commutes: homothety_ok,
        dim_y_minus: n,
        dim_y_plus: n,
        quotient_dimension,
        codimension,
        small,
        notes,
        pass,
    })
}

/// A point with support `S` is fixed iff the weights are constant on `S`. For
/// every nonempty `S` this holds exactly when `S` lies in one block, and then
/// `q` vanishes on all points with that support, so the fixed locus of `Q` is
/// `Y₋ ⊔ Y₊`.
fn fixed_locus_by_support(m: &QuadricModel, weights: &[i64]) -> (u64, bool) {
    let k = m.coordinate_count();
    let n = m.n;
    let mut ok = true;
    let mut count = 0u64;
    for mask in 1u64..(1u64 << k) {
        count += 1;
        let support: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let constant = support.iter().all(|&i| weights[i] == weights[support[0]]);
        let one_block = support.iter().all(|&i| i <= n) || support.iter().all(|&i| i > n);
        let q_vanishes = (0..=n).all(|i| !(support.contains(&i) && support.contains(&(n + 1 + i))));
        ok &= constant == one_block && (!constant || q_vanishes);
    }
    (count, ok)
}

fn scale(a: &WeightedAction, t: &BigRational, v: &[BigRational]) -> Vec<BigRational> {
    v.iter()
        .zip(a.point_weights())
        .map(|(c, &w)| {
            let mut f = BigRational::one();
            let base = if w >= 0 {
                t.clone()
            } else {
                BigRational::one() / t
            };
            for _ in 0..w.unsigned_abs() {
                f *= &base;
            }
            c * f
        })
        .collect()
}

fn commute(
    a: &WeightedAction,
    b: &WeightedAction,
    t: &BigRational,
    h: &BigRational,
    v: &[BigRational],
) -> bool {
    scale(a, t, &scale(b, h, v)) == scale(b, h, &scale(a, t, v))
}

/// `q(t·v) = t·q(v)` for the projective action.
pub fn form_is_semi_invariant(
    m: &QuadricModel,
    t: &BigRational,
    v: &[BigRational],
) -> Result<bool, Error> {
    Ok(m.form(&m.act(t, v))? == t * m.form(v)?)
}

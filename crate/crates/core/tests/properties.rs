mod common;

use cstar_flips::exact::{hermite_normal_form, integer_kernel, right_inverse, smith_normal_form};
use cstar_flips::polyhedral::{dual_cone, hilbert_basis};
use cstar_flips::quadric::{
    bb_limits, cone_membership, form_is_semi_invariant, sample_point, ProjPoint, QuadricModel,
};
use cstar_flips::toric_git::{cobordism_membership, limit_exists, LimitDirection, WeightedAction};
use cstar_flips::{Cone, Fan, IntMatrix, LatticeVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn pointed_generators() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=3).prop_flat_map(|d| {
        prop::collection::vec(
            (prop::collection::vec(-3i64..=3, d - 1), 1i64..=3).prop_map(|(mut g, last)| {
                g.push(last);
                g
            }),
            d..=d + 2,
        )
    })
}

fn any_generators() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=3).prop_flat_map(|d| {
        (
            Just(d),
            prop::collection::vec(prop::collection::vec(-3i64..=3, d), 1..=5),
        )
    })
}

fn lattice(vs: &[Vec<i64>]) -> Vec<LatticeVector> {
    vs.iter().map(|v| LatticeVector::from_i64(v)).collect()
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hnf_matches_textbook(rows in small_matrix()) {
        let cols = rows[0].len();
        let m = common::matrix(&rows, cols);
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert_eq!(common::det(&common::to_rows(&u)).abs(), 1);
        let input: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        prop_assert_eq!(common::to_rows(&h), common::textbook_hnf(&input));
    }

    #[test]
    fn snf_matches_determinantal_divisors(rows in small_matrix()) {
        let cols = rows[0].len();
        let m = common::matrix(&rows, cols);
        let (d, u, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d.clone());
        prop_assert_eq!(common::det(&common::to_rows(&u)).abs(), 1);
        prop_assert_eq!(common::det(&common::to_rows(&v)).abs(), 1);
        let dr = common::to_rows(&d);
        let diag: Vec<i128> = (0..rows.len().min(cols)).map(|i| dr[i][i]).collect();
        let input: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        prop_assert_eq!(diag, common::invariant_factors_by_minors(&input));
        for (i, row) in dr.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    prop_assert_eq!(*x, 0);
                }
            }
        }
    }

    #[test]
    fn kernel_is_saturated(rows in small_matrix()) {
        let cols = rows[0].len();
        let m = common::matrix(&rows, cols);
        let input: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let k = integer_kernel(&m);
        prop_assert_eq!(k.len(), cols - common::rank(&input));
        for v in &k {
            prop_assert!(m.apply(v).unwrap().is_zero());
        }
        if !k.is_empty() {
            prop_assert_eq!(common::minor_gcd(&common::rows_i128(&k), k.len()), 1);
        }
    }

    #[test]
    fn right_inverse_exists_iff_surjective(rows in small_matrix()) {
        let cols = rows[0].len();
        let m = common::matrix(&rows, cols);
        let input: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let surjective = rows.len() <= cols && common::minor_gcd(&input, rows.len()) == 1;
        match right_inverse(&m) {
            Some(s) => {
                prop_assert!(surjective);
                prop_assert_eq!(m.mul(&s).unwrap(), IntMatrix::identity(rows.len()));
            }
            None => prop_assert!(!surjective),
        }
    }

    #[test]
    fn double_dual_is_identity((d, gens) in any_generators()) {
        let c = Cone::new(d, &lattice(&gens)).unwrap();
        let dual = dual_cone(&c);
        prop_assert!(common::same_cone(&c, &dual_cone(&dual)));
        for r in dual.rays().iter().chain(dual.lineality()) {
            for g in lattice(&gens) {
                prop_assert!(!r.dot(&g).is_negative());
            }
        }
        for l in dual.lineality() {
            for g in lattice(&gens) {
                prop_assert!(l.dot(&g).is_zero());
            }
        }
    }

    #[test]
    fn hilbert_basis_matches_brute_force(gens in pointed_generators()) {
        let d = gens[0].len();
        let rows: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
        prop_assume!(common::rank(&rows) == d);
        let c = Cone::new(d, &lattice(&gens)).unwrap();
        let mut ours: Vec<Vec<i64>> = hilbert_basis(&c).unwrap().iter().map(common::vec_i64).collect();
        ours.sort();
        prop_assert_eq!(ours, common::brute_hilbert(&gens));
    }

    #[test]
    fn star_subdivision_preserves_support(
        gens in pointed_generators(),
        coeffs in prop::collection::vec(0i64..=3, 5),
        probes in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 30),
    ) {
        let d = gens[0].len();
        let rows: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
        prop_assume!(common::rank(&rows) == d);
        let mut v = vec![0i64; d];
        for (g, c) in gens.iter().zip(&coeffs) {
            for (x, y) in v.iter_mut().zip(g) {
                *x += c * y;
            }
        }
        let ray = LatticeVector::from_i64(&v);
        prop_assume!(!ray.is_zero());
        let ray = ray.primitive();
        let fan = Fan::from_cone(&Cone::new(d, &lattice(&gens)).unwrap());
        let sub = fan.star_subdivision(&ray).unwrap();
        prop_assert!(sub.validate().is_ok());
        prop_assert!(sub.refines(&fan).unwrap());
        prop_assert!(sub.ray_index(&ray).is_some());
        let facets = common::brute_facets(&gens);
        for p in probes {
            let p = &p[..d];
            let inside = facets.iter().all(|n| n.iter().zip(p).map(|(a, b)| a * b).sum::<i64>() >= 0);
            let pv = LatticeVector::from_i64(p);
            prop_assert_eq!(sub.support_contains(&pv).unwrap(), inside);
            prop_assert_eq!(fan.support_contains(&pv).unwrap(), inside);
        }
    }

    #[test]
    fn membership_agrees_with_orbit_growth(
        m in 0usize..=3,
        l in 0usize..=3,
        coords in prop::collection::vec((-5i64..=5, 1i64..=4), 8),
    ) {
        let a = WeightedAction::cobordism(m, l);
        let n = a.coordinate_count();
        let v: Vec<BigRational> = coords[..n].iter().map(|&(p, q)| rational(p, q)).collect();
        let ten = BigRational::from_integer(BigInt::from(10));
        let orbit = |t: &BigRational| -> Vec<BigRational> {
            v.iter().zip(a.point_weights()).map(|(x, &w)| x * t.pow(w as i32)).collect()
        };
        let grows = |t: &BigRational| orbit(t).iter().zip(&v).any(|(a, b)| a.abs() > b.abs());
        let tenth = ten.recip();
        let toward_infinity = !grows(&ten);
        let toward_zero = !grows(&tenth);
        prop_assert_eq!(limit_exists(&a, &v, LimitDirection::TowardInfinity).unwrap(), toward_infinity);
        prop_assert_eq!(limit_exists(&a, &v, LimitDirection::TowardZero).unwrap(), toward_zero);
        let mb = cobordism_membership(&a, &v).unwrap();
        prop_assert_eq!(mb.in_b_minus, !toward_infinity);
        prop_assert_eq!(mb.in_b_plus, !toward_zero);
    }

    #[test]
    fn quadric_form_is_semi_invariant(
        n in 1usize..=4,
        t in (-7i64..=7, 1i64..=5),
        coords in prop::collection::vec((-5i64..=5, 1i64..=4), 10),
    ) {
        prop_assume!(t.0 != 0);
        let q = QuadricModel::new(n).unwrap();
        let v: Vec<BigRational> = coords[..q.coordinate_count()].iter().map(|&(p, d)| rational(p, d)).collect();
        let t = rational(t.0, t.1);
        prop_assert!(form_is_semi_invariant(&q, &t, &v).unwrap());
        let moved = q.act(&t, &v);
        prop_assert_eq!(q.form(&moved).unwrap(), &t * q.form(&v).unwrap());
    }

    #[test]
    fn sampled_points_have_fixed_limits(n in 1usize..=4, seed in any::<u64>()) {
        let q = QuadricModel::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = sample_point(&q, &mut rng);
        prop_assert!(q.form(&v).unwrap().is_zero());
        let p = ProjPoint::new(v.clone()).unwrap();
        let limits = bb_limits(&q, &p).unwrap();
        prop_assert!(q.is_fixed(&limits.sink) && q.is_fixed(&limits.source));
        prop_assert!(q.on_quadric(&limits.sink).unwrap() && q.on_quadric(&limits.source).unwrap());
        let mb = cone_membership(&q, &v).unwrap();
        prop_assert!(mb.in_b_minus && mb.in_b_plus);
        let mut scaled = v.clone();
        for x in scaled.iter_mut() {
            *x *= rational(3, 1);
        }
        prop_assert!(q.form(&scaled).unwrap().is_zero());
    }
}

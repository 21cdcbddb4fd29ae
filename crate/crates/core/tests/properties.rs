use proptest::prelude::*;

use hyperelliptic::cantor::{cantor_add, cantor_neg, to_mumford, MumfordDivisor};
use hyperelliptic::field::{FieldSpec, Scalar};
use hyperelliptic::groupoid::{
    anchor, anchor_s, coweight_is_gap, grade_curve, grade_point, invert, star, viete_phi, PointListRep,
    RFunction,
};
use hyperelliptic::identities::extract_h;
use hyperelliptic::linalg::Matrix;
use hyperelliptic::poly::Poly;
use hyperelliptic::sample::{random_nonzero, random_pair, random_points_on, random_triple, seeded};
use hyperelliptic::Error;

const P: FieldSpec = FieldSpec::Prime(10007);
const Q: FieldSpec = FieldSpec::Rationals;

fn fp() -> impl Strategy<Value = Scalar> {
    (0i64..10007).prop_map(|n| P.from_i64(n))
}

fn small_q() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Scalar::parse(Q, &format!("{n}/{d}")).unwrap())
}

fn poly_fp(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(fp(), 0..max_len).prop_map(|c| Poly::new(P, c).unwrap())
}

fn check_field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<(), TestCaseError> {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!((a + b) + c, a + (b + c));
    prop_assert_eq!((a * b) * c, a * (b * c));
    prop_assert_eq!(a * (b + c), a * b + a * c);
    prop_assert_eq!(a - a, a.zero_like());
    if !a.is_zero() {
        prop_assert!((a * &a.inv().unwrap()).is_one());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_axioms(a in fp(), b in fp(), c in fp()) {
        check_field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn rational_field_axioms(a in small_q(), b in small_q(), c in small_q()) {
        check_field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn sqrt_squares_back(a in fp()) {
        let s = a.square();
        let r = s.sqrt().unwrap();
        prop_assert_eq!(r.square(), s);
    }

    #[test]
    fn divrem_reconstructs(a in poly_fp(9), b in poly_fp(6)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
        prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
    }

    #[test]
    fn xgcd_bezout(a in poly_fp(7), b in poly_fp(7)) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (d, s, t) = Poly::xgcd(&a, &b).unwrap();
        prop_assert!(d.is_monic());
        prop_assert_eq!(s.mul(&a).unwrap().add(&t.mul(&b).unwrap()).unwrap(), d.clone());
        prop_assert!(a.rem(&d).unwrap().is_zero());
        prop_assert!(b.rem(&d).unwrap().is_zero());
    }

    #[test]
    fn eval_is_a_ring_map(a in poly_fp(6), b in poly_fp(6), x in fp()) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.eval(&x).unwrap(), a.eval(&x).unwrap() * b.eval(&x).unwrap());
    }

    #[test]
    fn det_is_multiplicative(xs in prop::collection::vec(fp(), 18)) {
        let a = Matrix::new(P, 3, 3, xs[..9].to_vec()).unwrap();
        let b = Matrix::new(P, 3, 3, xs[9..].to_vec()).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn solve_round_trip(xs in prop::collection::vec(small_q(), 12)) {
        let a = Matrix::new(Q, 3, 3, xs[..9].to_vec()).unwrap();
        let b = &xs[9..];
        match a.solve(b) {
            Ok(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b.to_vec()),
            Err(e) => {
                prop_assert_eq!(e, Error::SingularMatrix);
                prop_assert!(a.det().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn groupoid_pair_invariants(seed in any::<u64>(), g in 1usize..=3) {
        let mut rng = seeded(seed);
        let (_, a, b) = random_pair(P, g, &mut rng).unwrap();
        prop_assert_eq!(invert(&invert(&a)), a.clone());
        prop_assert_eq!(anchor(&invert(&a)), anchor(&a));
        match star(&a, &b) {
            Ok(ab) => {
                prop_assert_eq!(star(&b, &a).unwrap(), ab.clone());
                prop_assert_eq!(anchor(&ab), anchor(&a));
                match star(&ab, &invert(&b)) {
                    Ok(back) => prop_assert_eq!(back, a),
                    Err(e) => prop_assert!(matches!(e, Error::DegenerateConfiguration(_))),
                }
            }
            Err(e) => prop_assert!(matches!(e, Error::DegenerateConfiguration(_))),
        }
    }

    #[test]
    fn both_anchor_routes_agree(seed in any::<u64>(), g in 1usize..=4) {
        let mut rng = seeded(seed);
        let (c, _, _) = random_pair(P, g, &mut rng).unwrap();
        let t = PointListRep::new(P, random_points_on(&c, &mut rng).unwrap(), c.lambda2().to_vec()).unwrap();
        prop_assert_eq!(anchor_s(&t).unwrap(), anchor(&viete_phi(&t).unwrap()));
    }

    #[test]
    fn grading_moves_along_the_fiber(seed in any::<u64>(), g in 1usize..=3) {
        let mut rng = seeded(seed);
        let (c, a, _) = random_pair(P, g, &mut rng).unwrap();
        let t = random_nonzero(P, &mut rng);
        let ct = grade_curve(&c, &t).unwrap();
        prop_assert_eq!(anchor(&grade_point(&a, &t).unwrap()), (ct.lambda1().to_vec(), ct.lambda2().to_vec()));
    }

    #[test]
    fn cantor_group_laws(seed in any::<u64>(), g in 1usize..=3) {
        let mut rng = seeded(seed);
        let (c, [a, b, d]) = random_triple(P, g, &mut rng).unwrap();
        let [x, y, z] = [&a, &b, &d].map(|p| to_mumford(p, &c).unwrap());
        let xy = cantor_add(&x, &y, &c).unwrap();
        prop_assert_eq!(xy.clone(), cantor_add(&y, &x, &c).unwrap());
        let lhs = cantor_add(&xy, &z, &c).unwrap();
        let rhs = cantor_add(&x, &cantor_add(&y, &z, &c).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert!(MumfordDivisor::new(lhs.u().clone(), lhs.v().clone(), &c).is_ok());
        prop_assert!(cantor_add(&x, &cantor_neg(&x), &c).unwrap().is_identity());
    }

    #[test]
    fn rfunction_parts_round_trip(g in 1usize..=5, xs in prop::collection::vec(fp(), 16)) {
        let rho = (g - 1) / 2;
        let r1 = Poly::new(P, xs[..=rho].to_vec()).unwrap();
        let r2 = Poly::new(P, xs[5..5 + g - rho].to_vec()).unwrap();
        let r3 = Poly::new(P, xs[10..10 + g].to_vec()).unwrap();
        let r = RFunction::from_parts(g, &r1, &r2, &r3).unwrap();
        prop_assert_eq!(r.r1(), r1);
        prop_assert_eq!(r.r2(), r2);
        prop_assert_eq!(r.r3(), r3);
        for w in 0..=3 * g {
            if coweight_is_gap(g, w) {
                prop_assert!(extract_h(&r, w).is_zero());
            }
        }
    }
}

#[test]
fn gap_count_matches_genus() {
    // the gaps are the odd weights 1, 3, ..., 2g-1
    for g in 1..=8usize {
        let gaps: Vec<usize> = (0..=3 * g).filter(|&w| coweight_is_gap(g, w)).map(|w| 3 * g - w).collect();
        let odd: Vec<usize> = (0..g).rev().map(|k| 2 * k + 1).collect();
        assert_eq!(gaps, odd);
    }
}

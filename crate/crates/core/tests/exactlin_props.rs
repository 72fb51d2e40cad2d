mod common;

use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use reidemeister::exactlin::*;

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_divisors_multiply_to_det(m in prop_oneof![square(2, 9), square(3, 9)]) {
        let snf = smith_normal_form(&m);
        let prod = snf.elementary_divisors.iter().fold(BigInt::one(), |acc, d| acc * d);
        prop_assert_eq!(prod.abs(), big(det(&rows_of(&m)).abs()));
        for w in snf.elementary_divisors.windows(2) {
            prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn snf_transforms_are_unimodular(m in prop_oneof![square(2, 9), square(3, 9)]) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&(&snf.u * &m) * &snf.v, snf.d.clone());
        prop_assert_eq!(big(det(&rows_of(&snf.u)).abs()), BigInt::one());
        prop_assert_eq!(big(det(&rows_of(&snf.v)).abs()), BigInt::one());
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    prop_assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn profile_is_conjugation_invariant(a in prop_oneof![unimodular(2), unimodular(3)], p3 in unimodular(3), p2 in unimodular(2)) {
        let p = if a.rows() == 2 { p2 } else { p3 };
        let before = eigenvalue_profile(&a).unwrap();
        let after = eigenvalue_profile(&conj(&p, &a)).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn eigenlattices_are_exact_and_saturated(a in prop_oneof![unimodular(2), unimodular(3)], eps in prop_oneof![Just(1i64), Just(-1i64)]) {
        let w = eigenlattice(&a, eps);
        for v in &w.basis {
            let av = a.apply(v).unwrap();
            let ev: Vec<BigInt> = v.iter().map(|x| x * eps).collect();
            prop_assert_eq!(av, ev);
        }
        if let Some(b) = w.matrix() {
            let snf = smith_normal_form(&b);
            prop_assert!(snf.elementary_divisors.iter().all(|d| d.is_one()));
        }
    }

    #[test]
    fn finite_order_is_minimal(a in prop_oneof![unimodular(2), unimodular(3)]) {
        let n = a.rows();
        match finite_order(&a) {
            Some(d) => {
                prop_assert!(a.pow_i64(d as i64).unwrap().is_identity());
                for e in 1..d {
                    prop_assert!(!a.pow_i64(e as i64).unwrap().is_identity());
                }
            }
            None => {
                // finite orders in GL_3(Z) are 1, 2, 3, 4 and 6
                let mut p = IntMatrix::identity(n);
                for _ in 0..12 {
                    p = &p * &a;
                    prop_assert!(!p.is_identity());
                }
            }
        }
    }

    #[test]
    fn membership_is_exact_or_certified(g in prop::collection::vec(-6i64..=6, 6), t in prop::collection::vec(-20i64..=20, 2)) {
        let gens = IntMatrix::from_i64(2, 3, &g).unwrap();
        let target = ivec(&t);
        match membership_certificate(&target, &gens).unwrap() {
            Membership::Member { coefficients } => {
                prop_assert_eq!(gens.apply(&coefficients).unwrap(), target);
            }
            Membership::NotMember { divisor, value, .. } => {
                let certified = if divisor.is_zero() { !value.is_zero() } else { !value.is_multiple_of(&divisor) };
                prop_assert!(certified);
                // a brute search over small coefficients must not find a solution either
                for x in -12i64..=12 {
                    for y in -12i64..=12 {
                        for z in -12i64..=12 {
                            prop_assert_ne!(gens.apply(&ivec(&[x, y, z])).unwrap(), target.clone());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn snf_of_small_examples() {
    let snf = smith_normal_form(&IntMatrix::from_rows(&[[1, -1], [-1, 0]]));
    assert_eq!(snf.elementary_divisors, ivec(&[1, 1]));
    let snf = smith_normal_form(&IntMatrix::from_rows(&[[2, 0], [0, 2]]));
    assert_eq!(snf.elementary_divisors, ivec(&[2, 2]));
    let snf = smith_normal_form(&IntMatrix::zero(2, 2));
    assert_eq!(snf.elementary_divisors, ivec(&[0, 0]));
}

#[test]
fn det_matches_cofactor_oracle() {
    for m in [[[2, 3], [3, 5]], [[0, -1], [1, 0]], [[1, 0], [0, 1]]] {
        let a = IntMatrix::from_rows(&m);
        assert_eq!(a.det().unwrap(), big(det(&rows_of(&a))));
    }
}

#[test]
fn profiles_of_small_examples() {
    let p = eigenvalue_profile(&IntMatrix::from_rows(&[[2, 3], [3, 5]])).unwrap();
    assert_eq!(p.kind, EigenKind::RealIrrationalPair);
    assert_eq!(p.trace, big(7));
    let p = eigenvalue_profile(&IntMatrix::from_rows(&[[0, -1], [1, 0]])).unwrap();
    assert_eq!((p.kind, p.finite_order), (EigenKind::ComplexPair, Some(4)));
    let p = eigenvalue_profile(&IntMatrix::from_rows(&[[1, 1], [0, 1]])).unwrap();
    assert_eq!((p.kind, p.finite_order), (EigenKind::RepeatedOne, None));
}

#[test]
fn centralizer_span_examples() {
    let m = IntMatrix::from_rows(&[[0, -1], [1, -1]]);
    // the six elements +-M^k, listed by hand
    let span: Vec<IntMatrix> = (0..3).flat_map(|k| {
        let p = m.pow_i64(k).unwrap();
        [p.clone(), -&p]
    }).collect();
    for x in all_2x2(2, &[1, -1]) {
        assert_eq!(in_centralizer_span(&m, &x).unwrap(), span.contains(&x), "{}", x);
    }
}

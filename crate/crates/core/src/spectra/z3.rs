use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::local::local_solutions;
use super::{
    classify_nilpotent, complete_basis, done, precondition, system2_witnesses, tahara_delta, Classification, SpectraError,
    SpectrumDescriptor,
};
use crate::exactlin::{eigenlattice, eigenvalue_profile, EigenKind, IntMatrix, IntVector};
use crate::groups::GroupFamily;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EightOutcome {
    /// `Q` with `A'QA' = Q` and `N = -C(I - QA')(I - A')^-1` integral.
    Eight {
        q: IntMatrix,
        #[serde(with = "crate::json::big_vec")]
        n: IntVector,
    },
    RInfinity { reason: String },
    Undecided { bound: u64 },
}

/// For `A` with a simple eigenvalue 1: a basis change `P` with
/// `P^-1 A P = [[1, C], [0, A']]`. Returns `(P, C, A')`.
pub fn split_eigenvalue_one(a: &IntMatrix) -> Result<(IntMatrix, IntVector, IntMatrix), SpectraError> {
    let w1 = eigenlattice(a, 1);
    if w1.rank() != 1 {
        return precondition("eigenvalue 1 must have a one-dimensional eigenlattice");
    }
    let p = if a.column(0) == IntMatrix::identity(3).column(0) {
        IntMatrix::identity(3)
    } else {
        complete_basis(&w1.basis[0])?
    };
    let conj = &(&p.inverse_unimodular()? * a) * &p;
    debug_assert!(conj.get(0, 0).is_one() && conj.get(1, 0).is_zero() && conj.get(2, 0).is_zero());
    Ok((p, conj.row(0)[1..].to_vec(), conj.block(1, 3, 1, 3)))
}

fn adjugate2(m: &IntMatrix) -> IntMatrix {
    IntMatrix::new(2, 2, vec![m.get(1, 1).clone(), -m.get(0, 1), -m.get(1, 0), m.get(0, 0).clone()]).expect("2x2")
}

/// `C (I - Q A') adj(I - A')`, which must be divisible by `det(I - A')`.
fn numerator(a_prime: &IntMatrix, c: &[BigInt], q: &IntMatrix) -> IntVector {
    let i = IntMatrix::identity(2);
    let inner = &(&i - &(q * a_prime)) * &adjugate2(&(&i - a_prime));
    inner.transpose().apply(c).expect("2x2")
}

fn eight_for(a_prime: &IntMatrix, c: &[BigInt], q: &IntMatrix, d: &BigInt) -> Option<IntVector> {
    let num = numerator(a_prime, c, q);
    if num.iter().all(|x| x.is_multiple_of(d)) {
        Some(num.iter().map(|x| -(x / d)).collect())
    } else {
        None
    }
}

/// Decides whether `Z^3 x|_A Z` with `A = [[1, C], [0, A']]` admits an
/// automorphism with Reidemeister number 8.
///
/// Candidate `Q` come from the bounded solution list of the trace-zero
/// system for `A'`, closed under `Q -> -Q` and `Q -> A'^(+-1) Q`. A negative answer
/// is only claimed when every solution modulo `8 |det(I - A')|` already fails
/// the integrality condition, which then holds for all integer solutions.
pub fn decide_z3_eight(a_prime: &IntMatrix, c: &[BigInt], bound: u64) -> Result<EightOutcome, SpectraError> {
    if a_prime.rows() != 2 || a_prime.cols() != 2 || c.len() != 2 {
        return precondition("expected a 2x2 block A' and a row C of length 2");
    }
    let profile = eigenvalue_profile(a_prime)?;
    if profile.kind != EigenKind::RealIrrationalPair || !profile.det.is_one() {
        return precondition("A' must have real eigenvalues other than +-1 and det 1");
    }
    let i = IntMatrix::identity(2);
    let d = (&i - a_prime).det()?;

    let modulus = (BigInt::from(8) * d.abs()).to_i64().unwrap_or(i64::MAX);
    if let Some(sols) = local_solutions(a_prime, modulus) {
        if sols.is_empty() {
            return Ok(EightOutcome::RInfinity { reason: "system2-local-obstruction".into() });
        }
        let any = sols.iter().any(|&[m, n, p]| {
            let q = IntMatrix::from_i64(2, 2, &[m, n, p, -m]).expect("2x2");
            numerator(a_prime, c, &q).iter().all(|x| x.is_multiple_of(&d))
        });
        if !any {
            return Ok(EightOutcome::RInfinity { reason: "parity-obstruction".into() });
        }
    }

    let a_inv = a_prime.inverse_unimodular()?;
    for w in system2_witnesses(a_prime, bound)? {
        let q0 = w.matrix();
        for q in [q0.clone(), -&q0, a_prime * &q0, -&(a_prime * &q0), &a_inv * &q0, -&(&a_inv * &q0)] {
            if let Some(n) = eight_for(a_prime, c, &q, &d) {
                return Ok(EightOutcome::Eight { q, n });
            }
        }
    }
    Ok(EightOutcome::Undecided { bound })
}

/// Spectrum of `Z^3 x|_A Z`.
pub fn classify_z3_semidirect(a: &IntMatrix, bound: u64) -> Result<Classification, SpectraError> {
    use SpectrumDescriptor::*;
    if a.rows() != 3 || a.cols() != 3 {
        return precondition("expected a 3x3 matrix");
    }
    if bound < 1 {
        return Err(SpectraError::BadBound);
    }
    let profile = eigenvalue_profile(a)?;
    let EigenKind::Mixed3(mixed) = profile.kind else { unreachable!("3x3 profile") };
    match mixed.plus_one {
        0 if a.is_scalar(-1) => done(Multiples { c: 2 }, &["Lemma-eig-1dekimpe", "Prop-i2"]),
        0 if mixed.minus_one == 0 => done(RInfinity, &["Lemma-eig-1dekimpe", "Prop-differentfrom-pm1"]),
        0 => done(RInfinity, &["Lemma-eig-1dekimpe", "Prop-completespace-1"]),
        3 => classify_nilpotent(&GroupFamily::zn_semidirect_z(a.clone())),
        2 => done(RInfinity, &["Prop-alg2"]),
        _ => {
            let (_, c, a_prime) = split_eigenvalue_one(a)?;
            let sub = eigenvalue_profile(&a_prime)?;
            match sub.kind {
                EigenKind::RepeatedMinusOne if a_prime.is_scalar(-1) => {
                    let delta = tahara_delta(a)?;
                    let c = if delta.value == 0 { 2 } else { 4 };
                    let step = if delta.value == 0 { "tahara-delta-0" } else { "tahara-delta-1" };
                    done(Multiples { c }, &["form-a-prime", step, "Prop-delta0"])
                }
                EigenKind::RepeatedMinusOne => done(RInfinity, &["form-a-prime", "Prop-nonzeron"]),
                EigenKind::ComplexPair => match sub.finite_order {
                    Some(3) => done(Multiples { c: 6 }, &["form-a-prime", "averaging-formula", "Prop-orde3delta1"]),
                    _ => done(RInfinity, &["form-a-prime", "averaging-formula", "Prop-4or6"]),
                },
                EigenKind::RealIrrationalPair if sub.det.is_negative() => {
                    done(RInfinity, &["form-a-prime", "Prop-0or8", "det-minus-one"])
                }
                EigenKind::RealIrrationalPair => match decide_z3_eight(&a_prime, &c, bound)? {
                    EightOutcome::Eight { .. } => {
                        done(SpectrumDescriptor::finite(&[8]), &["form-a-prime", "Prop-0or8", "eight-witness"])
                    }
                    EightOutcome::RInfinity { reason } => {
                        done(RInfinity, &["form-a-prime", "Prop-0or8", reason.as_str()])
                    }
                    EightOutcome::Undecided { bound } => done(
                        SpectrumDescriptor::undecided(RInfinity, SpectrumDescriptor::finite(&[8]), bound),
                        &["form-a-prime", "Prop-0or8", "bounded-search"],
                    ),
                },
                _ => unreachable!("eigenvalue 1 of A is simple"),
            }
        }
    }
}

use num_bigint::BigInt;

use super::{AutomorphismSpec, GroupError, GroupFamily};
use crate::exactlin::{cokernel_representatives, finite_order, IntMatrix};
use crate::twisted::{r_abelian, r_addition, r_averaging, HolonomySet, RNumber};

fn one_by_one(v: &BigInt) -> IntMatrix {
    IntMatrix::new(1, 1, vec![v.clone()]).expect("1x1")
}

/// `R(phi)` on `H_n` from the induced matrix `m`: `R(m) * |1 - det m|`.
fn r_heisenberg(m: &IntMatrix) -> Result<RNumber, GroupError> {
    let det = m.det()?;
    Ok(r_abelian(m)? * r_abelian(&one_by_one(&det))?)
}

/// Reidemeister number of a verified automorphism, through the addition or
/// averaging formula appropriate to its family.
pub fn reidemeister_number(spec: &AutomorphismSpec) -> Result<RNumber, GroupError> {
    if !spec.is_verified() {
        return Err(GroupError::NotVerified("call into_verified first".into()));
    }
    let d = spec.derived();
    let fitting = || d.fitting_matrix.clone().expect("verified spec has its blocks");
    match spec.family() {
        GroupFamily::FreeAbelian { .. } => Ok(r_abelian(&fitting())?),
        GroupFamily::Heisenberg { .. } => r_heisenberg(&fitting()),
        GroupFamily::HeisenbergTimesZ { .. } => {
            let n = d.central_matrix.clone().expect("central block");
            Ok(r_abelian(&n)? * r_abelian(&fitting())?)
        }
        GroupFamily::ZnSemidirectZ { a } => {
            let n = a.rows();
            if let Some(m) = d.fitting_matrix.clone() {
                return match spec.top_sign() {
                    Some(1) => Ok(RNumber::Infinite),
                    _ => {
                        // classes of the quotient: 1 and t; t v t^-1 = A^-1 v
                        let a_inv = a.inverse_unimodular()?;
                        Ok(r_addition(&[false, true], |&t| if t { a_inv.clone() } else { IntMatrix::identity(n) }, &m, false)?)
                    }
                };
            }
            if finite_order(a).is_some() {
                let lifted = IntMatrix::identity(1).block_diag(a);
                let f = HolonomySet::cyclic(&lifted)?;
                let m = d.lattice_matrix.clone().expect("verified spec preserves the lattice");
                return Ok(r_averaging(&f, &m)?);
            }
            Err(GroupError::NoFormulaRoute("Z^n is not preserved and A has infinite order".into()))
        }
        GroupFamily::Z2MinusIExt { a, .. } => {
            let b = spec.family().ext_b().expect("extension");
            let k = d.quotient_matrix.clone().expect("quotient block");
            let m = fitting();
            let reps = match cokernel_representatives(&(&IntMatrix::identity(2) - &k)) {
                None => return Ok(RNumber::Infinite),
                Some(reps) => reps,
            };
            let action = |r: &Vec<BigInt>| -> IntMatrix {
                let pow = |x: &IntMatrix, e: &BigInt| x.pow(e).expect("unimodular");
                &pow(&b, &r[0]) * &pow(a, &r[1])
            };
            Ok(r_addition(&reps, action, &m, false)?)
        }
        GroupFamily::HnSemidirectZ { a, .. } => match spec.top_sign() {
            Some(1) => Ok(RNumber::Infinite),
            _ => {
                let m = fitting();
                let am = a * &m;
                Ok(RNumber::sum([r_heisenberg(&m)?, r_heisenberg(&am)?]))
            }
        },
    }
}

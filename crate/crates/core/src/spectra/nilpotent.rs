use super::{done, precondition, Classification, SpectraError, SpectrumDescriptor};
use crate::exactlin::IntMatrix;
use crate::groups::GroupFamily;

/// Smallest `c >= 1` with `(A - I)^c = 0`, if `A` is unipotent.
fn unipotent_class(a: &IntMatrix) -> Option<usize> {
    let n = a.rows();
    let nil = a - &IntMatrix::identity(n);
    let mut p = nil.clone();
    for c in 1..=n.max(1) {
        if p.is_zero() {
            return Some(c);
        }
        p = &p * &nil;
    }
    None
}

/// Spectrum of a nilpotent group of Hirsch length at most 4: the abelian,
/// Heisenberg and `H_n x Z` families, and the semidirect families whose
/// action is unipotent.
pub fn classify_nilpotent(family: &GroupFamily) -> Result<Classification, SpectraError> {
    use SpectrumDescriptor::*;
    match family {
        GroupFamily::FreeAbelian { n: 1 } => done(SpectrumDescriptor::finite(&[2]), &["Spec-Z"]),
        GroupFamily::FreeAbelian { n } if *n >= 2 => done(Full, &["Spec-Zn"]),
        GroupFamily::Heisenberg { .. } => done(Multiples { c: 2 }, &["Spec-Hn"]),
        GroupFamily::HeisenbergTimesZ { .. } => done(Multiples { c: 4 }, &["Spec-HnxZ"]),
        GroupFamily::ZnSemidirectZ { a } => {
            let n = a.rows();
            match (n, unipotent_class(a)) {
                (_, None) => precondition("the action is not unipotent, the group is not nilpotent"),
                (_, Some(1)) => {
                    let c = classify_nilpotent(&GroupFamily::FreeAbelian { n: n + 1 })?;
                    Ok(c.cite("nilpotent-abelian"))
                }
                (2, Some(2)) => Ok(classify_nilpotent(&GroupFamily::Heisenberg { n: 1 })?.cite("nilpotent-class-2")),
                (3, Some(2)) => {
                    Ok(classify_nilpotent(&GroupFamily::HeisenbergTimesZ { n: 1 })?.cite("nilpotent-class-2"))
                }
                (3, Some(3)) => done(RInfinity, &["nilpotent-class-3"]),
                _ => precondition("outside Hirsch length 4"),
            }
        }
        GroupFamily::HnSemidirectZ { a, .. } => match unipotent_class(a) {
            None => precondition("the action is not unipotent, the group is not nilpotent"),
            Some(1) => Ok(classify_nilpotent(&GroupFamily::HeisenbergTimesZ { n: 1 })?.cite("nilpotent-class-2")),
            Some(_) => done(RInfinity, &["nilpotent-class-3"]),
        },
        _ => precondition(format!("{} is not a nilpotent family", family.tag())),
    }
}
